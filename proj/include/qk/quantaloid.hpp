#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>

#include "qk/category.hpp"
#include "qk/lattice.hpp"

namespace qk {

/// Index of an element inside a hom lattice. For powerset homs the index is
/// the subset bitmask itself.
using Val = std::uint32_t;

/// A category whose hom-sets are complete lattices and whose composition
/// preserves joins in each variable. Two representations share the
/// interface:
///   Table - explicit hom lattices and materialized composition tables;
///   Free  - powersets of the hom-sets of a finite base category, with
///           elementwise composition done by bit operations.
/// Residuation is the generic join formula in both cases:
///   left_residual(w, f)  = join of all v with v o f <= w
///   right_residual(g, w) = join of all f with g o f <= w
/// and is memoized per alignment. The Free kind additionally exposes the
/// set-comprehension residuals as an independent second path.
class Quantaloid {
public:
    enum class Kind { Table, Free };

    /// Exhaustive law check over an explicit presentation: identity laws,
    /// associativity, and join/bottom preservation of composition in each
    /// variable. comp[(s*N+t)*N+u] maps (g, f) -> g o f by flat index
    /// g * hom_size(s,t) + f.
    static Checked<Quantaloid> validate(std::vector<std::string> objects,
                                        std::vector<FiniteLattice> homs,  // [s*N+t]
                                        std::vector<std::vector<Val>> comp,
                                        std::vector<Val> identities);

    /// Powerset quantaloid over a base category. Hom-sets larger than
    /// caps.max_free_hom are refused.
    static Quantaloid free_over(FiniteCategory base, const Caps& caps = {});

    /// One-object quantaloid from a complete lattice with a tensor table.
    static Checked<Quantaloid> from_quantale(const FiniteLattice& carrier,
                                             const std::vector<std::vector<int>>& tensor, int unit);

    Quantaloid opposite() const;

    Kind kind() const { return kind_; }
    bool is_free() const { return kind_ == Kind::Free; }
    int object_count() const { return static_cast<int>(objects_.size()); }
    const std::string& object_name(int i) const { return objects_[i]; }
    int object_index(const std::string& name) const;
    int hom_size(int s, int t) const;

    bool leq(int s, int t, Val a, Val b) const;
    Val join(int s, int t, Val a, Val b) const;
    Val meet(int s, int t, Val a, Val b) const;
    Val bottom(int s, int t) const;
    Val top(int s, int t) const;

    Val id(int s) const;
    Val compose(int s, int t, int u, Val g, Val f) const;  // g: t->u, f: s->t
    Val left_residual(int s, int t, int u, Val w, Val f) const;   // w: s->u, f: s->t, out: t->u
    Val right_residual(int s, int t, int u, Val g, Val w) const;  // g: t->u, w: s->u, out: s->t

    /// Free kind only: residuals by the defining subset comprehension.
    Val free_left_residual_direct(int s, int t, int u, Val w, Val f) const;
    Val free_right_residual_direct(int s, int t, int u, Val g, Val w) const;

    const FiniteCategory& base() const;              // Free kind only
    const FiniteLattice& hom_lattice(int s, int t) const;  // Table kind only

    std::string elem_name(int s, int t, Val v) const;

    Quantaloid(const Quantaloid& other);
    Quantaloid(Quantaloid&&) = default;
    Quantaloid& operator=(const Quantaloid& other);
    Quantaloid& operator=(Quantaloid&&) = default;

private:
    Quantaloid() = default;

    Kind kind_ = Kind::Table;
    std::vector<std::string> objects_;
    // Table kind
    std::vector<FiniteLattice> homs_;     // [s*N+t]
    std::vector<std::vector<Val>> comp_;  // [(s*N+t)*N+u][g*hom_size(s,t)+f]
    std::vector<Val> ids_;
    // Free kind
    FiniteCategory base_;

    // Residuals memoize under a lock so the cache stays a write-once map
    // even if callers ever share a quantaloid across threads.
    struct ResidualMemo {
        std::mutex mutex;
        std::unordered_map<std::uint64_t, Val> map;
    };
    std::unique_ptr<ResidualMemo> memo_ = std::make_unique<ResidualMemo>();

    Val compose_raw(int s, int t, int u, Val g, Val f) const;
};

using QuantaloidPtr = std::shared_ptr<const Quantaloid>;

}  // namespace qk
