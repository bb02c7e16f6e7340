#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qk/config.hpp"

namespace qk {

/// Finite poset. `le` is reflexive, transitive and antisymmetric by the time
/// a Poset value exists; only the validators build them from raw data.
struct Poset {
    std::vector<std::string> elems;
    std::vector<std::vector<bool>> le;

    int size() const { return static_cast<int>(elems.size()); }
    bool leq(int a, int b) const { return le[a][b]; }
    int index_of(const std::string& name) const;
};

/// Build a poset from generating pairs (a <= b); the reflexive-transitive
/// closure is taken first, so only antisymmetry can fail (code NotAPoset).
Checked<Poset> validate_poset(const std::vector<std::string>& elems,
                              const std::vector<std::pair<int, int>>& le_pairs);

/// Validate a raw relation table as-is: reflexivity, transitivity and
/// antisymmetry are all diagnosed rather than repaired.
Checked<Poset> validate_poset_table(const std::vector<std::string>& elems,
                                    const std::vector<std::vector<bool>>& table);

/// Finite complete lattice with materialized pairwise join/meet tables.
struct FiniteLattice {
    std::vector<std::string> elems;
    std::vector<std::vector<bool>> le;
    std::vector<std::vector<int>> join_tab, meet_tab;
    int bottom = -1, top = -1;

    int size() const { return static_cast<int>(elems.size()); }
    bool leq(int a, int b) const { return le[a][b]; }
    int join(int a, int b) const { return join_tab[a][b]; }
    int meet(int a, int b) const { return meet_tab[a][b]; }
    int join_all(const std::vector<int>& xs) const;  // empty set -> bottom
    int meet_all(const std::vector<int>& xs) const;  // empty set -> top
    int index_of(const std::string& name) const;
    Poset poset() const { return Poset{elems, le}; }
};

/// Decide whether a poset is a complete lattice. Diagnostics: NotAPoset is
/// impossible here (input is a Poset already); NoBound names a subset with
/// no least upper / greatest lower bound. Finite completeness is audited on
/// every subset up to 2^lattice_full_check_limit, sampled beyond that.
Checked<FiniteLattice> validate_lattice(const Poset& p, const Caps& caps = {});
Checked<FiniteLattice> validate_lattice(const std::vector<std::string>& elems,
                                        const std::vector<std::pair<int, int>>& le_pairs,
                                        const Caps& caps = {});

enum class BoundKind { Join, Meet };

/// Fold the requested bound over a subset via the lattice tables.
int bound(const FiniteLattice& l, const std::vector<int>& subset, BoundKind kind);

/// Definitional bound on a bare poset: scan for the least upper (greatest
/// lower) bound; -1 when none exists. Independent of any lattice table.
int bound_by_scan(const Poset& p, const std::vector<int>& subset, BoundKind kind);

/// Join-irreducibles (x != bottom and x = a v b forces x in {a,b}); dually
/// meet-irreducibles. Decided by the definitional pair scan.
std::vector<int> irreducibles(const FiniteLattice& l, BoundKind kind);

/// Same set characterized through covers: join-irreducible iff exactly one
/// lower cover. Kept as a second, independent code path.
std::vector<int> irreducibles_by_covers(const FiniteLattice& l, BoundKind kind);

/// Covering pairs (a, b) with a covered by b: the Hasse diagram edges.
std::vector<std::pair<int, int>> cover_pairs(const Poset& p);

/// Dedekind-MacNeille completion by exhaustive cut enumeration. Every cut is
/// lb(ub(S)) for some subset S; the lattice is the family of cuts ordered by
/// inclusion, and `embed` sends x to the principal cut (down-set of x).
struct CutLattice {
    FiniteLattice lattice;
    std::vector<int> embed;               // poset element -> lattice index
    std::vector<std::vector<bool>> cuts;  // lattice index -> lower part of the cut
};
CutLattice dedekind_macneille(const Poset& p);

/// Order isomorphism search (backtracking, small inputs only).
std::optional<std::vector<int>> find_order_iso(const Poset& a, const Poset& b);

}  // namespace qk
