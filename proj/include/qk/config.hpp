#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qk {

/// Enumeration budgets. Every operation that walks a combinatorial space
/// consults these and refuses (TooLargeError) instead of running away.
struct Caps {
    /// Upper bound on the product of per-object candidate counts when
    /// enumerating presheaves / functors / maps.
    long long max_presheaf_candidates = 1'000'000;
    /// Lattices up to this size get the full 2^n subset completeness audit.
    int lattice_full_check_limit = 12;
    /// Larger lattices get this many sampled subsets instead.
    int lattice_subset_samples = 10'000;
    /// Hom-sets of a base category may carry at most this many morphisms
    /// when the powerset quantaloid over it is materialized.
    int max_free_hom = 16;
    /// Fibres larger than this are not swept subset-by-subset.
    int max_fibre_subset = 16;
    /// Probe size for initial-source verification.
    int probe_bound = 2;
    /// Seed for every randomized corpus; fixed so runs are reproducible.
    std::uint64_t seed = 1;
};

/// One law violation or unmet requirement, e.g. {"NoBound", "a b"}.
struct Diagnostic {
    std::string code;
    std::string detail;
};

std::string render_diagnostics(const std::vector<Diagnostic>& diags);

/// Malformed input: unparseable file, dangling reference, bad arguments.
/// Maps to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration would exceed its cap. Maps to exit code 3.
class TooLargeError : public std::runtime_error {
public:
    TooLargeError(const std::string& what, long long estimate)
        : std::runtime_error(what + " (estimated " + std::to_string(estimate) + " candidates)"),
          estimate(estimate) {}
    long long estimate;
};

/// Internal consistency assertion; stays armed in release builds. A failure
/// is an engine defect (two code paths disagreeing), never bad input.
inline void engine_check(bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("engine invariant violated: ") + what);
}

/// Validation outcome: either a value or the list of violations found.
template <typename T>
struct Checked {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value(); }
    const T& get() const {
        if (!value) throw InputError(render_diagnostics(diagnostics));
        return *value;
    }
};

/// Deterministic RNG. Raw mt19937_64 draws only; std::*_distribution is
/// implementation-defined and would break cross-platform reproducibility.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng() % n; }
    bool chance(unsigned num, unsigned den) { return below(den) < num; }
};

}  // namespace qk
