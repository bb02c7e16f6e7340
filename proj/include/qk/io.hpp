#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qk/concrete.hpp"
#include "qk/isbell.hpp"

namespace qk {

/// A parsed instance file: named blocks resolvable by type and name.
/// Supported block headers: [poset n], [lattice n], [category n],
/// [quantale n], [qcategory n], [qfunctor n], [qdistributor n],
/// [concrete n], [sink n], [presheaf n]. Entries are `key = value` lines;
/// composition triples are written `g . f = h` (categories) and
/// `a * b = c` (quantales). References point at blocks defined earlier in
/// the same file. Blocks keep their written order for serialization.
struct InstanceFile {
    struct Block {
        std::string type;
        std::string name;
    };

    struct QuantaleEntry {
        QuantaloidPtr q;        // one-object table quantaloid
        FiniteLattice carrier;  // element names used when rendering homs
    };
    struct QCatEntry {
        QCatPtr cat;
        bool free = false;  // `over = free <category>` vs `over = <quantale>`
        std::string over;   // referenced block name
    };
    struct ConcreteEntry {
        ConcreteCategory c;
        std::string base;     // referenced category block name
        QuantaloidPtr qfree;  // shared free quantaloid over that base
        QCatPtr enc;          // the enriched encoding
    };
    struct SinkEntry {
        std::string over;  // qcategory or concrete block name
        QCatPtr cat;       // resolved category (the encoding for a concrete)
        StructuredSink sink;
    };
    struct PresheafEntry {
        std::string over;
        Presheaf p;
    };
    struct QFunctorEntry {
        std::string src, dst;
        QFunctor f;
    };
    struct QDistributorEntry {
        std::string src, dst;
        QDistributor d;
    };

    std::vector<Block> order;
    std::map<std::string, Poset> posets;
    std::map<std::string, FiniteLattice> lattices;
    std::map<std::string, FiniteCategory> categories;
    std::map<std::string, QuantaleEntry> quantales;
    std::map<std::string, QCatEntry> qcategories;
    std::map<std::string, ConcreteEntry> concretes;
    std::map<std::string, SinkEntry> sinks;
    std::map<std::string, PresheafEntry> presheaves;
    std::map<std::string, QFunctorEntry> qfunctors;
    std::map<std::string, QDistributorEntry> qdistributors;

    /// Free quantaloids shared across blocks, keyed by category block name.
    std::map<std::string, QuantaloidPtr> free_qs;

    /// Resolve a name to a category usable by the engine: a qcategory
    /// directly, a concrete through its encoding. Null when absent.
    QCatPtr resolve_qcat(const std::string& name) const;
};

/// Outcome of reading an instance file. Structural problems (malformed
/// lines, unknown keys, unresolved or forward references, out-of-range
/// values) carry code ParseError or UnresolvedReference, keep `file`
/// empty, and map to the input-error exit code. Semantic diagnostics are
/// the per-block validator findings (law violations) and map to the
/// property-false exit code. `file` is set only when both lists are empty.
struct ParseResult {
    std::optional<InstanceFile> file;
    std::vector<Diagnostic> structural;
    std::vector<Diagnostic> semantic;

    int status() const { return !structural.empty() ? 2 : (!semantic.empty() ? 1 : 0); }
};

ParseResult parse_instance(const std::string& text, const Caps& caps = {});

/// Canonical text for a parsed file: blocks in original order, entries in
/// index order, orders given by their covering pairs. Serializing a parse
/// of its own output reproduces the text byte for byte.
std::string serialize_instance(const InstanceFile& f);

/// Uniform command outcome. `status` follows the exit-code contract:
/// 0 success, 1 property-false (including validator findings), 2 input
/// error, 3 enumeration cap exceeded. `text` is the human-readable report
/// ending in a machine-readable block fenced by ---report--- lines;
/// `output` and `dot` carry secondary artifacts (instance file text, DOT
/// graph) when the command produces them.
struct CommandResult {
    int status = 0;
    std::string text;
    std::string output;
    std::string dot;
};

/// Parse and validate; report one line per violation with witnesses.
CommandResult run_validate(const std::string& text, const Caps& caps = {});

/// Decide totality/topologicity for a qcategory or concrete target.
/// `which` is "total", "topological", or "all"; "all" runs every
/// characterization and, for concrete targets, the transpose comparison.
CommandResult run_check(const InstanceFile& f, const std::string& target,
                        const std::string& which, const Caps& caps = {});

/// Completion commands. `mode` is "macneille" (poset or lattice target),
/// "reconstruct" (lattice target), or "isbell" (distributor target). The
/// completed structure is returned as a new instance file in `output`,
/// with a Hasse diagram in `dot` when requested and drawable.
CommandResult run_complete(const InstanceFile& f, const std::string& target,
                           const std::string& mode, bool with_dot, const Caps& caps = {});

/// Normalize the named sink and report its lifting, if any.
CommandResult run_final_lift(const InstanceFile& f, const std::string& sink,
                             const Caps& caps = {});

/// Extend the functor named `fname` along the fully faithful functor named
/// `gname`; the extension is returned as a qfunctor block in `output`.
CommandResult run_extend(const InstanceFile& f, const std::string& fname,
                         const std::string& gname, const Caps& caps = {});

/// Hasse diagram in DOT for posets, lattices, and categories enriched in a
/// two-element quantale; anything else falls back to a hom-table rendering.
CommandResult run_export_dot(const InstanceFile& f, const std::string& target);

}  // namespace qk
