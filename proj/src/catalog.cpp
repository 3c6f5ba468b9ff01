#include "gnc/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gnc {

namespace {

FiniteGroup make_group(std::vector<std::vector<int>> table, std::vector<std::string> labels,
                       int max_order) {
    const int n = static_cast<int>(table.size());
    if (n > max_order)
        throw OrderTooLarge("order " + std::to_string(n) + " exceeds limit " +
                            std::to_string(max_order));
    // Tables above the scan limit only come from permutation composition and
    // direct products, where associativity is structural.
    if (n <= 64) return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
    return FiniteGroup::from_trusted_table(std::move(table), std::move(labels), max_order);
}

FiniteGroup build_cyclic(int n, int max_order) {
    std::vector<std::vector<int>> table(static_cast<size_t>(n),
                                        std::vector<int>(static_cast<size_t>(n)));
    std::vector<std::string> labels(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        labels[static_cast<size_t>(i)] =
            i == 0 ? "1" : (i == 1 ? "a" : "a" + std::to_string(i));
        for (int j = 0; j < n; ++j)
            table[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
    }
    return make_group(std::move(table), std::move(labels), max_order);
}

FiniteGroup build_dihedral(int n, int max_order) {
    const int order = 2 * n;
    auto id = [n](int i, int j) { return j * n + i; };
    std::vector<std::vector<int>> table(static_cast<size_t>(order),
                                        std::vector<int>(static_cast<size_t>(order)));
    std::vector<std::string> labels(static_cast<size_t>(order));
    for (int i = 0; i < n; ++i) {
        const std::string ri = i == 0 ? "" : (i == 1 ? "r" : "r" + std::to_string(i));
        labels[static_cast<size_t>(id(i, 0))] = i == 0 ? "1" : ri;
        labels[static_cast<size_t>(id(i, 1))] = ri + "s";
    }
    // (r^i s^j)(r^k s^l): the flip inverts the rotation it passes over.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < 2; ++l) {
                    const int rot = j == 0 ? (i + k) % n : ((i - k) % n + n) % n;
                    table[static_cast<size_t>(id(i, j))][static_cast<size_t>(id(k, l))] =
                        id(rot, (j + l) % 2);
                }
    return make_group(std::move(table), std::move(labels), max_order);
}

FiniteGroup build_quaternion(int max_order) {
    // id = 2*axis + sign with axes 1, i, j, k.
    static const int axis_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<std::vector<int>> table(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int ax = a / 2, sx = a % 2, ay = b / 2, sy = b % 2;
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                2 * axis_mul[ax][ay] + ((sx + sy + sign_mul[ax][ay]) % 2);
        }
    std::vector<std::string> labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    return make_group(std::move(table), std::move(labels), max_order);
}

int permutation_parity(const std::vector<int>& p) {
    int swaps = 0;
    std::vector<char> seen(p.size(), 0);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        size_t j = i, len = 0;
        while (!seen[j]) {
            seen[j] = 1;
            j = static_cast<size_t>(p[j]);
            ++len;
        }
        swaps += static_cast<int>(len) - 1;
    }
    return swaps % 2;
}

std::string cycle_label(const std::vector<int>& p) {
    std::string out;
    std::vector<char> seen(p.size(), 0);
    for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out += '(';
        size_t j = i;
        while (!seen[j]) {
            seen[j] = 1;
            out += std::to_string(j + 1);
            j = static_cast<size_t>(p[j]);
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

FiniteGroup build_permutation_group(int points, bool even_only, int max_order) {
    std::vector<int> base(static_cast<size_t>(points));
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    do {
        if (!even_only || permutation_parity(base) == 0) perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    // Lexicographic order puts the identity first.

    const int n = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[perms[static_cast<size_t>(i)]] = i;

    std::vector<std::vector<int>> table(static_cast<size_t>(n),
                                        std::vector<int>(static_cast<size_t>(n)));
    std::vector<std::string> labels(static_cast<size_t>(n));
    std::vector<int> prod(static_cast<size_t>(points));
    for (int a = 0; a < n; ++a) {
        labels[static_cast<size_t>(a)] = cycle_label(perms[static_cast<size_t>(a)]);
        for (int b = 0; b < n; ++b) {
            // (a*b)(p) = a(b(p))
            for (int p = 0; p < points; ++p)
                prod[static_cast<size_t>(p)] =
                    perms[static_cast<size_t>(a)]
                         [static_cast<size_t>(perms[static_cast<size_t>(b)][static_cast<size_t>(p)])];
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] = index.at(prod);
        }
    }
    return make_group(std::move(table), std::move(labels), max_order);
}

struct SpecAtom {
    char family; // 'C', 'D', 'Q', 'S', 'A', 'f'
    int n = 0;
    std::string path;
};

SpecAtom parse_atom(const std::string& atom) {
    if (atom.rfind("file:", 0) == 0) {
        if (atom.size() == 5) throw ParseError("empty path in '" + atom + "'");
        return {'f', 0, atom.substr(5)};
    }
    if (atom == "Q8") return {'Q', 8, ""};
    if (atom.size() < 2) throw ParseError("unrecognized group spec '" + atom + "'");
    const char f = atom[0];
    if (f != 'C' && f != 'D' && f != 'S' && f != 'A')
        throw ParseError("unrecognized group spec '" + atom + "'");
    const std::string digits = atom.substr(1);
    if (digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("unrecognized group spec '" + atom + "'");
    if (digits.size() > 6) throw OrderTooLarge("'" + atom + "' is far beyond the order cap");
    const int n = std::stoi(digits);
    if (n < 1) throw ParseError("group spec '" + atom + "' needs n >= 1");
    if ((f == 'S' || f == 'A') && n > 5)
        throw ParseError("'" + atom + "' out of range: S/A support n <= 5");
    return {f, n, ""};
}

int factorial(int n) {
    int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

int atom_order(const SpecAtom& a) {
    switch (a.family) {
        case 'C': return a.n;
        case 'D': return 2 * a.n;
        case 'Q': return 8;
        case 'S': return factorial(a.n);
        case 'A': return a.n <= 2 ? 1 : factorial(a.n) / 2;
        default: break;
    }
    // File atom: read just the order line.
    std::ifstream in(a.path);
    if (!in) throw FileError("cannot open '" + a.path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        int n;
        if (ss >> n) return n;
    }
    throw FormatError("'" + a.path + "' has no order line");
}

std::vector<SpecAtom> parse_spec(const std::string& spec) {
    std::string s = spec;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw ParseError("empty group spec");
    if (s.find("file:") != std::string::npos) {
        if (s.rfind("file:", 0) != 0)
            throw ParseError("'file:' must start the spec; file atoms do not combine with 'x'");
        return {parse_atom(s)};
    }
    std::vector<SpecAtom> atoms;
    size_t pos = 0;
    while (pos <= s.size()) {
        const size_t next = s.find('x', pos);
        const std::string atom =
            next == std::string::npos ? s.substr(pos) : s.substr(pos, next - pos);
        atoms.push_back(parse_atom(atom));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return atoms;
}

FiniteGroup build_atom(const SpecAtom& a, int max_order) {
    switch (a.family) {
        case 'C': return build_cyclic(a.n, max_order);
        case 'D': return build_dihedral(a.n, max_order);
        case 'Q': return build_quaternion(max_order);
        case 'S': return build_permutation_group(a.n, false, max_order);
        case 'A': return build_permutation_group(a.n, true, max_order);
        default: return load_cayley_file(a.path);
    }
}

} // namespace

int spec_order(const std::string& spec) {
    int order = 1;
    for (const SpecAtom& a : parse_spec(spec)) order *= atom_order(a);
    return order;
}

FiniteGroup build_group(const std::string& spec, int max_order) {
    const std::vector<SpecAtom> atoms = parse_spec(spec);
    int order = 1;
    for (const SpecAtom& a : atoms) order *= atom_order(a);
    if (order > max_order)
        throw OrderTooLarge("spec '" + spec + "' has order " + std::to_string(order) +
                            " > limit " + std::to_string(max_order));
    FiniteGroup g = build_atom(atoms.front(), max_order);
    for (size_t i = 1; i < atoms.size(); ++i)
        g = direct_product(g, build_atom(atoms[i], max_order), max_order);
    return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, int max_order) {
    const int na = a.order(), nb = b.order(), n = na * nb;
    auto id = [nb](int x, int y) { return x * nb + y; };
    std::vector<std::vector<int>> table(static_cast<size_t>(n),
                                        std::vector<int>(static_cast<size_t>(n)));
    std::vector<std::string> labels(static_cast<size_t>(n));
    for (int x1 = 0; x1 < na; ++x1)
        for (int y1 = 0; y1 < nb; ++y1) {
            labels[static_cast<size_t>(id(x1, y1))] = a.label(x1) + "|" + b.label(y1);
            for (int x2 = 0; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2)
                    table[static_cast<size_t>(id(x1, y1))][static_cast<size_t>(id(x2, y2))] =
                        id(a.mul(x1, x2), b.mul(y1, y2));
        }
    return make_group(std::move(table), std::move(labels), max_order);
}

FiniteGroup load_cayley_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open '" + path + "'");

    std::vector<int> values;
    std::vector<std::string> labels;
    std::string line;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "labels:") {
            std::string tok;
            while (ss >> tok) labels.push_back(tok);
            continue;
        }
        std::istringstream nums(line);
        int v;
        while (nums >> v) values.push_back(v);
        if (!nums.eof())
            throw FormatError("'" + path + "': non-numeric token in table data");
    }
    if (values.empty()) throw FormatError("'" + path + "' has no order line");
    const int n = values.front();
    if (n < 1) throw FormatError("'" + path + "': order must be >= 1");
    if (static_cast<int>(values.size()) != 1 + n * n)
        throw FormatError("'" + path + "': expected " + std::to_string(n * n) +
                          " table entries, got " + std::to_string(values.size() - 1));
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw FormatError("'" + path + "': expected " + std::to_string(n) + " labels, got " +
                          std::to_string(labels.size()));

    std::vector<std::vector<int>> table(static_cast<size_t>(n),
                                        std::vector<int>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                values[static_cast<size_t>(1 + i * n + j)];
    return FiniteGroup::from_cayley_table(std::move(table), std::move(labels));
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& G) {
    if (G.order() > 64) throw TooLarge("subgroup enumeration capped at order 64");

    std::map<ElementSet, ElementSet> found; // members -> generators
    std::vector<ElementSet> queue;
    const Subgroup triv = Subgroup::trivial(G);
    found[triv.members()] = {};
    queue.push_back(triv.members());

    for (size_t head = 0; head < queue.size(); ++head) {
        const ElementSet current = queue[head];
        const ElementSet gens = found.at(current);
        for (int x = 1; x < G.order(); ++x) {
            if (set_contains(current, x)) continue;
            ElementSet next_gens = gens;
            next_gens.push_back(x);
            ElementSet grown = current;
            grown.push_back(x);
            Subgroup closed = generated_subgroup(G, make_set(std::move(grown)));
            auto [it, inserted] = found.try_emplace(closed.members(), next_gens);
            if (inserted) queue.push_back(it->first);
        }
    }

    std::vector<Subgroup> out;
    out.reserve(found.size());
    for (const auto& [members, gens] : found) out.emplace_back(G, members, gens);
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.members() < b.members();
    });
    return out;
}

std::vector<std::string> default_families(int max_order) {
    std::vector<std::string> fams;
    for (int n = 1; n <= max_order; ++n) fams.push_back("C" + std::to_string(n));

    // Non-cyclic abelian groups: one spec per primary decomposition.
    for (int m = 4; m <= max_order; ++m) {
        std::vector<std::pair<int, int>> factorization; // (prime, exponent)
        int rest = m;
        for (int p = 2; p * p <= rest; ++p)
            if (rest % p == 0) {
                int e = 0;
                while (rest % p == 0) {
                    rest /= p;
                    ++e;
                }
                factorization.emplace_back(p, e);
            }
        if (rest > 1) factorization.emplace_back(rest, 1);

        // Partitions of each exponent give the abelian groups of order m.
        std::vector<std::vector<std::vector<int>>> parts_per_prime;
        for (const auto& [p, e] : factorization) {
            std::vector<std::vector<int>> parts;
            std::vector<int> cur;
            auto rec = [&](auto&& self, int remaining, int max_part) -> void {
                if (remaining == 0) {
                    parts.push_back(cur);
                    return;
                }
                for (int part = std::min(remaining, max_part); part >= 1; --part) {
                    cur.push_back(part);
                    self(self, remaining - part, part);
                    cur.pop_back();
                }
            };
            rec(rec, e, e);
            parts_per_prime.push_back(std::move(parts));
        }

        std::vector<std::string> specs_for_m;
        std::vector<size_t> choice(parts_per_prime.size(), 0);
        while (true) {
            std::vector<int> cyclic_factors;
            bool is_cyclic_class = true;
            for (size_t i = 0; i < choice.size(); ++i) {
                const std::vector<int>& part = parts_per_prime[i][choice[i]];
                if (part.size() > 1) is_cyclic_class = false;
                for (int exp : part) {
                    int q = 1;
                    for (int t = 0; t < exp; ++t) q *= factorization[i].first;
                    cyclic_factors.push_back(q);
                }
            }
            if (!is_cyclic_class) {
                std::sort(cyclic_factors.begin(), cyclic_factors.end());
                std::string spec;
                for (int q : cyclic_factors) {
                    if (!spec.empty()) spec += "x";
                    spec += "C" + std::to_string(q);
                }
                specs_for_m.push_back(spec);
            }
            size_t i = 0;
            while (i < choice.size() && ++choice[i] == parts_per_prime[i].size()) {
                choice[i] = 0;
                ++i;
            }
            if (i == choice.size()) break;
        }
        std::sort(specs_for_m.begin(), specs_for_m.end());
        fams.insert(fams.end(), specs_for_m.begin(), specs_for_m.end());
    }

    for (int n = 3; 2 * n <= max_order; ++n) fams.push_back("D" + std::to_string(n));
    if (max_order >= 8) fams.push_back("Q8");
    if (max_order >= 16) fams.push_back("C2xQ8");
    for (int n = 3; 4 * n <= max_order; ++n) fams.push_back("C2xD" + std::to_string(n));
    if (max_order >= 6) fams.push_back("S3");
    if (max_order >= 12) fams.push_back("A4");
    if (max_order >= 24) fams.push_back("S4");
    if (max_order >= 60) fams.push_back("A5");
    return fams;
}

} // namespace gnc
