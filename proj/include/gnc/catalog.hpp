#ifndef GNC_CATALOG_HPP
#define GNC_CATALOG_HPP

#include <string>
#include <vector>

#include "gnc/group.hpp"

namespace gnc {

// Group-spec grammar:
//
//   C<n> | D<n> | Q8 | S<n> | A<n> | <spec>x<spec> | file:<path>
//
// D<n> is the dihedral group of order 2n; S<n>/A<n> accept n <= 5. Products
// are left-associative. A spec containing "file:" must be exactly one file
// atom; file paths do not combine with 'x' (paths may contain that letter).
//
// `max_order` caps the resulting order (default 64). Orders above 64 are only
// reachable through permutation/product constructions, whose tables are
// associative by construction, so the O(n^3) check is skipped there.
FiniteGroup build_group(const std::string& spec, int max_order = 64);

// Order the spec would produce, without building the table.
int spec_order(const std::string& spec);

// Cayley-table text format: `#` starts a comment; first value line holds n;
// the next n lines hold n whitespace-separated 0-based ids; an optional final
// line `labels: a b c ...` names the elements (default g0..g{n-1}).
FiniteGroup load_cayley_file(const std::string& path);

// Direct product with pair labels "la|lb"; identity (0,0) lands at id 0.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, int max_order = 64);

// Every subgroup, found by closure extension: grow each known subgroup by one
// outside element and close, until stable. Exhaustive for any finite group.
// Sorted by (order, member list); includes the trivial and improper subgroups.
std::vector<Subgroup> all_subgroups(const FiniteGroup& G);

// Default sweep families, in a fixed order: cyclic groups, non-cyclic
// abelian groups in primary decomposition, dihedral groups, Q8,
// C2 x {D<n>, Q8}, S3, A4, S4 and A5, keeping every spec whose order is at
// most max_order.
std::vector<std::string> default_families(int max_order);

} // namespace gnc

#endif
