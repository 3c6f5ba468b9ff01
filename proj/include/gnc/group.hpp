#ifndef GNC_GROUP_HPP
#define GNC_GROUP_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnc/errors.hpp"

namespace gnc {

// Element ids are indices into one group's multiplication table.
// They are only meaningful relative to that group; the identity is always id 0.
using ElementId = int;

// Canonical element set: sorted, duplicate-free ids over one parent group.
using ElementSet = std::vector<ElementId>;

bool set_contains(const ElementSet& s, ElementId x);
ElementSet make_set(std::vector<ElementId> ids);

// A finite group given by its full multiplication table.
//
// Construction verifies the group axioms eagerly: Latin-square rows/columns,
// a two-sided identity, two-sided inverses, and associativity over all
// triples (O(n^3); the public constructor refuses n > 64). Tables whose
// identity is not element 0 are relabeled on ingestion and the relabeling is
// kept for reporting. Instances are immutable and safe to share across
// threads.
class FiniteGroup {
public:
    // Verifies every axiom. Throws NotLatinSquare / NoIdentity /
    // NotAssociative / OrderTooLarge (n > 64 or n < 1).
    static FiniteGroup from_cayley_table(std::vector<std::vector<int>> table,
                                         std::vector<std::string> labels = {});

    // For tables that are associative by construction (permutation
    // composition, direct products): checks everything except associativity
    // and lifts the order cap to `max_order`. Used by the catalog, which
    // still routes tables of order <= 64 through the full check.
    static FiniteGroup from_trusted_table(std::vector<std::vector<int>> table,
                                          std::vector<std::string> labels,
                                          int max_order);

    int order() const { return n_; }
    ElementId identity() const { return 0; }

    ElementId mul(ElementId a, ElementId b) const { return table_[a][b]; }
    ElementId inv(ElementId a) const { return inverse_[a]; }

    // [x, y] = x^{-1} y^{-1} x y
    ElementId commutator(ElementId x, ElementId y) const {
        return mul(mul(inv(x), inv(y)), mul(x, y));
    }

    // y^{-1} x y
    ElementId conjugate(ElementId x, ElementId y) const {
        return mul(mul(inv(y), x), y);
    }

    int element_order(ElementId a) const;
    bool is_abelian() const;

    const std::string& label(ElementId a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Looks an element up by display label; falls back to a decimal id.
    std::optional<ElementId> find_label(const std::string& s) const;

    // When the input table's identity was not element 0:
    // relabeling()[new_id] = original id. Empty otherwise.
    const std::vector<int>& relabeling() const { return relabeling_; }

    ElementSet all_elements() const;
    ElementSet center() const;

private:
    FiniteGroup() = default;

    int n_ = 0;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::vector<std::string> labels_;
    std::vector<int> relabeling_;
};

// A subgroup of one FiniteGroup, stored as the canonical sorted member list.
// Construction verifies closure under product and inverse and membership of
// the identity; Lagrange (|H| divides |G|) is asserted as a sanity check.
class Subgroup {
public:
    Subgroup(const FiniteGroup& parent, ElementSet members,
             ElementSet generators = {});

    static Subgroup whole(const FiniteGroup& parent);
    static Subgroup trivial(const FiniteGroup& parent);

    const FiniteGroup& parent() const { return *parent_; }
    const ElementSet& members() const { return members_; }
    const ElementSet& generators() const { return generators_; }

    int order() const { return static_cast<int>(members_.size()); }
    bool contains(ElementId x) const { return mask_[static_cast<size_t>(x)] != 0; }

    bool is_whole_group() const { return order() == parent_->order(); }
    bool is_abelian() const;
    bool is_normal() const;

    bool operator==(const Subgroup& other) const {
        return parent_ == other.parent_ && members_ == other.members_;
    }

private:
    const FiniteGroup* parent_;
    ElementSet members_;
    ElementSet generators_;
    std::vector<char> mask_;
};

// {y in `within` : xy = yx}. With `within` = all elements this is C_G(x).
ElementSet centralizer(const FiniteGroup& G, ElementId x,
                       std::span<const ElementId> within);
ElementSet centralizer(const FiniteGroup& G, ElementId x);

// Z(H, G) = {x in H : xy = yx for all y in G}.
ElementSet relative_center(const Subgroup& H);

// Z(G, H) = {x in G : xy = yx for all y in H}. Z(G, G) = Z(G).
ElementSet cocentralizer(const FiniteGroup& G, const Subgroup& H);

// K(H, G) = {[x, y] : x in H, y in G} as an exact set.
ElementSet commutator_set(const Subgroup& H);

// Closure of `gens` under product; smallest subgroup containing them.
Subgroup generated_subgroup(const FiniteGroup& G, ElementSet gens);

// [H, G] = <K(H, G)>.
Subgroup relative_commutator_subgroup(const Subgroup& H);

// Orbits of `carrier` under conjugation by `acting`; carrier must be stable
// under the action. Classes are sorted internally and ordered by smallest
// member.
std::vector<ElementSet> conjugacy_classes(const FiniteGroup& G,
                                          std::span<const ElementId> carrier,
                                          std::span<const ElementId> acting);

// Conjugacy classes of G.
std::vector<ElementSet> conjugacy_classes(const FiniteGroup& G);

// Number of conjugacy classes of H (as a group in its own right).
int class_count(const Subgroup& H);

// Number of orbits of H's member set under conjugation by all of G.
// Meaningful when H is normal in G.
int class_count_under_parent(const Subgroup& H);

// Some y in `within` with y^{-1} x y = target, or nullopt. Smallest id wins.
// When `within` carries a subgroup and a witness exists, the full witness set
// is a right coset of C_within(x), so it has exactly |C_within(x)| elements.
std::optional<ElementId> conjugating_witness(const FiniteGroup& G, ElementId x,
                                             ElementId target,
                                             std::span<const ElementId> within);

// True when every Sylow subgroup is normal, checked by counting elements of
// prime-power order: the p-power-order elements form the unique Sylow
// p-subgroup exactly when there are p^{v_p(|G|)} of them.
bool is_nilpotent(const FiniteGroup& G);

int smallest_prime_factor(int n);

} // namespace gnc

#endif
