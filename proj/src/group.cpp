#include "gnc/group.hpp"

#include <algorithm>
#include <numeric>

namespace gnc {

bool set_contains(const ElementSet& s, ElementId x) {
    return std::binary_search(s.begin(), s.end(), x);
}

ElementSet make_set(std::vector<ElementId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

namespace {

std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<size_t>(i)] = "g" + std::to_string(i);
    return labels;
}

void check_latin_square(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    std::vector<char> seen(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(table[static_cast<size_t>(i)].size()) != n)
            throw NotLatinSquare("row " + std::to_string(i) + " has wrong length");
        std::fill(seen.begin(), seen.end(), 0);
        for (int j = 0; j < n; ++j) {
            const int v = table[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (v < 0 || v >= n)
                throw NotLatinSquare("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") = " + std::to_string(v) + " out of range");
            if (seen[static_cast<size_t>(v)])
                throw NotLatinSquare("row " + std::to_string(i) + " repeats value " +
                                     std::to_string(v));
            seen[static_cast<size_t>(v)] = 1;
        }
    }
    for (int j = 0; j < n; ++j) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int i = 0; i < n; ++i) {
            const int v = table[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (seen[static_cast<size_t>(v)])
                throw NotLatinSquare("column " + std::to_string(j) + " repeats value " +
                                     std::to_string(v));
            seen[static_cast<size_t>(v)] = 1;
        }
    }
}

int find_identity(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            ok = table[static_cast<size_t>(e)][static_cast<size_t>(j)] == j &&
                 table[static_cast<size_t>(j)][static_cast<size_t>(e)] == j;
        if (ok) return e;
    }
    return -1;
}

} // namespace

FiniteGroup FiniteGroup::from_trusted_table(std::vector<std::vector<int>> table,
                                            std::vector<std::string> labels,
                                            int max_order) {
    const int n = static_cast<int>(table.size());
    if (n < 1) throw OrderTooLarge("empty table");
    if (n > max_order)
        throw OrderTooLarge("order " + std::to_string(n) + " exceeds limit " +
                            std::to_string(max_order));

    check_latin_square(table);

    const int e = find_identity(table);
    if (e < 0) throw NoIdentity("table has no two-sided identity element");

    if (labels.empty()) labels = default_labels(n);
    if (static_cast<int>(labels.size()) != n)
        throw FormatError("expected " + std::to_string(n) + " labels, got " +
                          std::to_string(labels.size()));

    FiniteGroup g;
    if (e != 0) {
        // Relabel by the transposition 0 <-> e so the identity sits at id 0.
        std::vector<int> to_new(static_cast<size_t>(n));
        std::iota(to_new.begin(), to_new.end(), 0);
        std::swap(to_new[0], to_new[static_cast<size_t>(e)]);
        std::vector<std::vector<int>> relabeled(static_cast<size_t>(n),
                                                std::vector<int>(static_cast<size_t>(n)));
        std::vector<std::string> new_labels(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            new_labels[static_cast<size_t>(to_new[static_cast<size_t>(i)])] =
                labels[static_cast<size_t>(i)];
            for (int j = 0; j < n; ++j)
                relabeled[static_cast<size_t>(to_new[static_cast<size_t>(i)])]
                         [static_cast<size_t>(to_new[static_cast<size_t>(j)])] =
                    to_new[static_cast<size_t>(table[static_cast<size_t>(i)][static_cast<size_t>(j)])];
        }
        table = std::move(relabeled);
        labels = std::move(new_labels);
        // relabeling_[new_id] = original id; for a transposition it is its own map.
        g.relabeling_ = to_new;
    }

    g.n_ = n;
    g.table_ = std::move(table);
    g.labels_ = std::move(labels);

    g.inverse_.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (g.table_[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0 &&
                g.table_[static_cast<size_t>(j)][static_cast<size_t>(i)] == 0) {
                g.inverse_[static_cast<size_t>(i)] = j;
                break;
            }
        }
        if (g.inverse_[static_cast<size_t>(i)] < 0)
            throw NoIdentity("element " + std::to_string(i) + " has no two-sided inverse");
    }
    return g;
}

FiniteGroup FiniteGroup::from_cayley_table(std::vector<std::vector<int>> table,
                                           std::vector<std::string> labels) {
    FiniteGroup g = from_trusted_table(std::move(table), std::move(labels), 64);
    const int n = g.n_;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k)))
                    throw NotAssociative("(a*b)*c != a*(b*c) for triple (" + std::to_string(i) +
                                         "," + std::to_string(j) + "," + std::to_string(k) + ")");
    return g;
}

int FiniteGroup::element_order(ElementId a) const {
    int ord = 1;
    ElementId p = a;
    while (p != 0) {
        p = mul(p, a);
        ++ord;
    }
    return ord;
}

bool FiniteGroup::is_abelian() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (mul(i, j) != mul(j, i)) return false;
    return true;
}

std::optional<ElementId> FiniteGroup::find_label(const std::string& s) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[static_cast<size_t>(i)] == s) return i;
    if (!s.empty() && s.size() <= 3 && s.find_first_not_of("0123456789") == std::string::npos) {
        const int id = std::stoi(s);
        if (id < n_) return id;
    }
    return std::nullopt;
}

ElementSet FiniteGroup::all_elements() const {
    ElementSet s(static_cast<size_t>(n_));
    std::iota(s.begin(), s.end(), 0);
    return s;
}

ElementSet FiniteGroup::center() const {
    ElementSet z;
    for (int x = 0; x < n_; ++x) {
        bool central = true;
        for (int y = 0; y < n_ && central; ++y) central = mul(x, y) == mul(y, x);
        if (central) z.push_back(x);
    }
    return z;
}

Subgroup::Subgroup(const FiniteGroup& parent, ElementSet members, ElementSet generators)
    : parent_(&parent), members_(make_set(std::move(members))),
      generators_(std::move(generators)), mask_(static_cast<size_t>(parent.order()), 0) {
    if (members_.empty() || members_.front() != 0)
        throw Error("subgroup does not contain the identity");
    for (ElementId x : members_) {
        if (x < 0 || x >= parent.order()) throw Error("subgroup member out of range");
        mask_[static_cast<size_t>(x)] = 1;
    }
    for (ElementId x : members_) {
        if (!contains(parent.inv(x))) throw Error("subgroup not closed under inverse");
        for (ElementId y : members_)
            if (!contains(parent.mul(x, y))) throw Error("subgroup not closed under product");
    }
    if (parent.order() % order() != 0)
        throw Error("subgroup order does not divide group order");
}

Subgroup Subgroup::whole(const FiniteGroup& parent) {
    return Subgroup(parent, parent.all_elements());
}

Subgroup Subgroup::trivial(const FiniteGroup& parent) { return Subgroup(parent, {0}); }

bool Subgroup::is_abelian() const {
    for (ElementId x : members_)
        for (ElementId y : members_)
            if (parent_->mul(x, y) != parent_->mul(y, x)) return false;
    return true;
}

bool Subgroup::is_normal() const {
    for (int y = 0; y < parent_->order(); ++y)
        for (ElementId x : members_)
            if (!contains(parent_->conjugate(x, y))) return false;
    return true;
}

ElementSet centralizer(const FiniteGroup& G, ElementId x, std::span<const ElementId> within) {
    ElementSet c;
    for (ElementId y : within)
        if (G.mul(x, y) == G.mul(y, x)) c.push_back(y);
    return c;
}

ElementSet centralizer(const FiniteGroup& G, ElementId x) {
    return centralizer(G, x, G.all_elements());
}

ElementSet relative_center(const Subgroup& H) {
    const FiniteGroup& G = H.parent();
    ElementSet z;
    for (ElementId x : H.members()) {
        bool central = true;
        for (int y = 0; y < G.order() && central; ++y) central = G.mul(x, y) == G.mul(y, x);
        if (central) z.push_back(x);
    }
    return z;
}

ElementSet cocentralizer(const FiniteGroup& G, const Subgroup& H) {
    ElementSet z;
    for (int x = 0; x < G.order(); ++x) {
        bool commutes = true;
        for (ElementId y : H.members()) {
            if (G.mul(x, y) != G.mul(y, x)) {
                commutes = false;
                break;
            }
        }
        if (commutes) z.push_back(x);
    }
    return z;
}

ElementSet commutator_set(const Subgroup& H) {
    const FiniteGroup& G = H.parent();
    std::vector<char> seen(static_cast<size_t>(G.order()), 0);
    for (ElementId x : H.members())
        for (int y = 0; y < G.order(); ++y) seen[static_cast<size_t>(G.commutator(x, y))] = 1;
    ElementSet k;
    for (int v = 0; v < G.order(); ++v)
        if (seen[static_cast<size_t>(v)]) k.push_back(v);
    return k;
}

Subgroup generated_subgroup(const FiniteGroup& G, ElementSet gens) {
    std::vector<char> in(static_cast<size_t>(G.order()), 0);
    ElementSet closure{0};
    in[0] = 1;
    std::vector<ElementId> queue{0};
    for (ElementId g : gens) {
        if (!in[static_cast<size_t>(g)]) {
            in[static_cast<size_t>(g)] = 1;
            closure.push_back(g);
            queue.push_back(g);
        }
    }
    // Breadth-first closure under products; inverses appear as powers.
    for (size_t head = 0; head < queue.size(); ++head) {
        const ElementId a = queue[head];
        const size_t known = closure.size();
        for (size_t i = 0; i < known; ++i) {
            for (const ElementId p : {G.mul(a, closure[i]), G.mul(closure[i], a)}) {
                if (!in[static_cast<size_t>(p)]) {
                    in[static_cast<size_t>(p)] = 1;
                    closure.push_back(p);
                    queue.push_back(p);
                }
            }
        }
    }
    return Subgroup(G, std::move(closure), std::move(gens));
}

Subgroup relative_commutator_subgroup(const Subgroup& H) {
    return generated_subgroup(H.parent(), commutator_set(H));
}

std::vector<ElementSet> conjugacy_classes(const FiniteGroup& G,
                                          std::span<const ElementId> carrier,
                                          std::span<const ElementId> acting) {
    std::vector<char> done(static_cast<size_t>(G.order()), 0);
    std::vector<ElementSet> classes;
    for (ElementId x : carrier) {
        if (done[static_cast<size_t>(x)]) continue;
        std::vector<char> in_orbit(static_cast<size_t>(G.order()), 0);
        ElementSet orbit;
        for (ElementId a : acting) {
            const ElementId y = G.conjugate(x, a);
            if (!in_orbit[static_cast<size_t>(y)]) {
                in_orbit[static_cast<size_t>(y)] = 1;
                orbit.push_back(y);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        for (ElementId y : orbit) done[static_cast<size_t>(y)] = 1;
        classes.push_back(std::move(orbit));
    }
    std::sort(classes.begin(), classes.end(),
              [](const ElementSet& a, const ElementSet& b) { return a.front() < b.front(); });
    return classes;
}

std::vector<ElementSet> conjugacy_classes(const FiniteGroup& G) {
    const ElementSet all = G.all_elements();
    return conjugacy_classes(G, all, all);
}

int class_count(const Subgroup& H) {
    return static_cast<int>(
        conjugacy_classes(H.parent(), H.members(), H.members()).size());
}

int class_count_under_parent(const Subgroup& H) {
    return static_cast<int>(
        conjugacy_classes(H.parent(), H.members(), H.parent().all_elements()).size());
}

std::optional<ElementId> conjugating_witness(const FiniteGroup& G, ElementId x,
                                             ElementId target,
                                             std::span<const ElementId> within) {
    for (ElementId y : within)
        if (G.conjugate(x, y) == target) return y;
    return std::nullopt;
}

bool is_nilpotent(const FiniteGroup& G) {
    int n = G.order();
    std::vector<int> primes;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) primes.push_back(m);

    for (int p : primes) {
        int sylow_order = 1;
        int q = n;
        while (q % p == 0) {
            sylow_order *= p;
            q /= p;
        }
        int count = 0;
        for (int x = 0; x < n; ++x) {
            int ord = G.element_order(x);
            while (ord % p == 0) ord /= p;
            if (ord == 1) ++count;
        }
        if (count != sylow_order) return false;
    }
    return true;
}

int smallest_prime_factor(int n) {
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

} // namespace gnc
