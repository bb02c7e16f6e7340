#include "qk/lattice.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qk {

int Poset::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (elems[i] == name) return i;
    return -1;
}

int FiniteLattice::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (elems[i] == name) return i;
    return -1;
}

int FiniteLattice::join_all(const std::vector<int>& xs) const {
    int acc = bottom;
    for (int x : xs) acc = join_tab[acc][x];
    return acc;
}

int FiniteLattice::meet_all(const std::vector<int>& xs) const {
    int acc = top;
    for (int x : xs) acc = meet_tab[acc][x];
    return acc;
}

namespace {

void transitive_close(std::vector<std::vector<bool>>& m) {
    const int n = static_cast<int>(m.size());
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (m[i][k])
                for (int j = 0; j < n; ++j)
                    if (m[k][j]) m[i][j] = true;
}

std::vector<Diagnostic> check_names(const std::vector<std::string>& elems) {
    std::vector<Diagnostic> out;
    if (elems.empty()) out.push_back({"EmptyCarrier", "no elements given"});
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if (elems[i] == elems[j]) out.push_back({"DuplicateName", elems[i]});
    return out;
}

}  // namespace

Checked<Poset> validate_poset(const std::vector<std::string>& elems,
                              const std::vector<std::pair<int, int>>& le_pairs) {
    Checked<Poset> res;
    res.diagnostics = check_names(elems);
    if (!res.diagnostics.empty()) return res;
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) m[i][i] = true;
    for (auto [a, b] : le_pairs) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            res.diagnostics.push_back({"BadIndex", "relation pair out of range"});
            return res;
        }
        m[a][b] = true;
    }
    transitive_close(m);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (m[a][b] && m[b][a])
                res.diagnostics.push_back({"NotAPoset", "cycle through " + elems[a] + " " + elems[b]});
    if (!res.diagnostics.empty()) return res;
    res.value = Poset{elems, std::move(m)};
    return res;
}

Checked<Poset> validate_poset_table(const std::vector<std::string>& elems,
                                    const std::vector<std::vector<bool>>& table) {
    Checked<Poset> res;
    res.diagnostics = check_names(elems);
    if (!res.diagnostics.empty()) return res;
    const int n = static_cast<int>(elems.size());
    for (int i = 0; i < n; ++i)
        if (!table[i][i]) res.diagnostics.push_back({"NotAPoset", "missing reflexivity at " + elems[i]});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && table[a][b] && table[b][a])
                res.diagnostics.push_back({"NotAPoset", "cycle through " + elems[a] + " " + elems[b]});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table[a][b])
                for (int c = 0; c < n; ++c)
                    if (table[b][c] && !table[a][c])
                        res.diagnostics.push_back(
                            {"NotAPoset",
                             "transitivity fails at " + elems[a] + " " + elems[b] + " " + elems[c]});
    if (!res.diagnostics.empty()) return res;
    res.value = Poset{elems, table};
    return res;
}

namespace {

// Least element of `cand` (all of whose members are comparable candidates),
// or -1. `cand` is a bitmask-free vector<bool> to keep sizes unbounded.
int least_of(const Poset& p, const std::vector<bool>& cand) {
    const int n = p.size();
    for (int u = 0; u < n; ++u) {
        if (!cand[u]) continue;
        bool least = true;
        for (int z = 0; z < n && least; ++z)
            if (cand[z] && !p.leq(u, z)) least = false;
        if (least) return u;
    }
    return -1;
}

}  // namespace

int bound_by_scan(const Poset& p, const std::vector<int>& subset, BoundKind kind) {
    const int n = p.size();
    std::vector<bool> cand(n, true);
    for (int z = 0; z < n; ++z)
        for (int x : subset)
            if (kind == BoundKind::Join ? !p.leq(x, z) : !p.leq(z, x)) {
                cand[z] = false;
                break;
            }
    // least upper bound; for meets, the greatest lower bound is the least
    // candidate in the dual order.
    if (kind == BoundKind::Join) return least_of(p, cand);
    Poset dual{p.elems, {}};
    dual.le.assign(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dual.le[i][j] = p.le[j][i];
    return least_of(dual, cand);
}

Checked<FiniteLattice> validate_lattice(const Poset& p, const Caps& caps) {
    Checked<FiniteLattice> res;
    const int n = p.size();
    FiniteLattice l;
    l.elems = p.elems;
    l.le = p.le;
    l.join_tab.assign(n, std::vector<int>(n, -1));
    l.meet_tab.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n && res.diagnostics.size() < 8; ++a)
        for (int b = a; b < n && res.diagnostics.size() < 8; ++b) {
            int j = bound_by_scan(p, {a, b}, BoundKind::Join);
            int m = bound_by_scan(p, {a, b}, BoundKind::Meet);
            if (j < 0) res.diagnostics.push_back({"NoBound", p.elems[a] + " " + p.elems[b] + " (join)"});
            if (m < 0) res.diagnostics.push_back({"NoBound", p.elems[a] + " " + p.elems[b] + " (meet)"});
            l.join_tab[a][b] = l.join_tab[b][a] = j;
            l.meet_tab[a][b] = l.meet_tab[b][a] = m;
        }
    if (!res.diagnostics.empty()) return res;
    // Pairwise bounds + finiteness give global ones by folding.
    int bot = 0, top = 0;
    for (int i = 1; i < n; ++i) {
        bot = l.meet_tab[bot][i];
        top = l.join_tab[top][i];
    }
    l.bottom = bot;
    l.top = top;

    // Completeness audit over subsets: exhaustive when small, sampled beyond.
    auto audit = [&](const std::vector<int>& subset) -> bool {
        int fold = l.join_all(subset);
        if (bound_by_scan(p, subset, BoundKind::Join) != fold) return false;
        fold = l.meet_all(subset);
        return bound_by_scan(p, subset, BoundKind::Meet) == fold;
    };
    if (n <= caps.lattice_full_check_limit) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) subset.push_back(i);
            if (!audit(subset)) {
                res.diagnostics.push_back({"NoBound", "subset audit failed"});
                return res;
            }
        }
    } else {
        Rng rng(caps.seed);
        for (int s = 0; s < caps.lattice_subset_samples; ++s) {
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (rng.chance(1, 2)) subset.push_back(i);
            if (!audit(subset)) {
                res.diagnostics.push_back({"NoBound", "subset audit failed"});
                return res;
            }
        }
    }
    res.value = std::move(l);
    return res;
}

Checked<FiniteLattice> validate_lattice(const std::vector<std::string>& elems,
                                        const std::vector<std::pair<int, int>>& le_pairs,
                                        const Caps& caps) {
    auto p = validate_poset(elems, le_pairs);
    if (!p.ok()) return Checked<FiniteLattice>{std::nullopt, p.diagnostics};
    return validate_lattice(*p.value, caps);
}

int bound(const FiniteLattice& l, const std::vector<int>& subset, BoundKind kind) {
    return kind == BoundKind::Join ? l.join_all(subset) : l.meet_all(subset);
}

std::vector<int> irreducibles(const FiniteLattice& l, BoundKind kind) {
    const int n = l.size();
    std::vector<int> out;
    for (int x = 0; x < n; ++x) {
        if (x == (kind == BoundKind::Join ? l.bottom : l.top)) continue;
        bool irr = true;
        for (int a = 0; a < n && irr; ++a)
            for (int b = 0; b < n && irr; ++b) {
                int c = kind == BoundKind::Join ? l.join(a, b) : l.meet(a, b);
                if (c == x && a != x && b != x) irr = false;
            }
        if (irr) out.push_back(x);
    }
    return out;
}

std::vector<std::pair<int, int>> cover_pairs(const Poset& p) {
    const int n = p.size();
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b || !p.leq(a, b)) continue;
            bool covered = true;
            for (int c = 0; c < n && covered; ++c)
                if (c != a && c != b && p.leq(a, c) && p.leq(c, b)) covered = false;
            if (covered) out.push_back({a, b});
        }
    return out;
}

std::vector<int> irreducibles_by_covers(const FiniteLattice& l, BoundKind kind) {
    auto cov = cover_pairs(l.poset());
    const int n = l.size();
    std::vector<int> degree(n, 0);
    for (auto [a, b] : cov) ++degree[kind == BoundKind::Join ? b : a];
    std::vector<int> out;
    for (int x = 0; x < n; ++x)
        if (degree[x] == 1) out.push_back(x);
    return out;
}

CutLattice dedekind_macneille(const Poset& p) {
    const int n = p.size();
    if (n > 20) throw TooLargeError("cut enumeration over " + std::to_string(n) + " elements", 1LL << n);
    using Mask = std::uint32_t;
    auto ub = [&](Mask s) {
        Mask out = 0;
        for (int z = 0; z < n; ++z) {
            bool all = true;
            for (int x = 0; x < n && all; ++x)
                if (s >> x & 1) all = p.leq(x, z);
            if (all) out |= Mask{1} << z;
        }
        return out;
    };
    auto lb = [&](Mask s) {
        Mask out = 0;
        for (int z = 0; z < n; ++z) {
            bool all = true;
            for (int x = 0; x < n && all; ++x)
                if (s >> x & 1) all = p.leq(z, x);
            if (all) out |= Mask{1} << z;
        }
        return out;
    };
    std::vector<Mask> cuts;
    std::vector<bool> seen(std::size_t{1} << n, false);
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        Mask c = lb(ub(s));
        if (!seen[c]) {
            seen[c] = true;
            cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end(), [](Mask a, Mask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    CutLattice out;
    out.embed.assign(n, -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        // Principal cuts keep their generator's name.
        std::string name;
        for (int x = 0; x < n; ++x)
            if (cuts[i] == lb(ub(Mask{1} << x))) {
                name = p.elems[x];
                break;
            }
        if (name.empty()) name = "c" + std::to_string(i);
        while (std::find(names.begin(), names.end(), name) != names.end()) name += "_";
        names.push_back(name);
    }
    std::vector<std::pair<int, int>> le_pairs;
    for (std::size_t i = 0; i < cuts.size(); ++i)
        for (std::size_t j = 0; j < cuts.size(); ++j)
            if ((cuts[i] & cuts[j]) == cuts[i]) le_pairs.push_back({int(i), int(j)});
    out.lattice = validate_lattice(names, le_pairs).get();
    for (int x = 0; x < n; ++x) {
        Mask principal = lb(ub(Mask{1} << x));
        for (std::size_t i = 0; i < cuts.size(); ++i)
            if (cuts[i] == principal) out.embed[x] = static_cast<int>(i);
    }
    for (Mask c : cuts) {
        std::vector<bool> row(n, false);
        for (int x = 0; x < n; ++x) row[x] = (c >> x & 1) != 0;
        out.cuts.push_back(std::move(row));
    }
    return out;
}

namespace {

bool iso_extend(const Poset& a, const Poset& b, std::vector<int>& map, std::vector<bool>& used, int next) {
    const int n = a.size();
    if (next == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (used[cand]) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev)
            ok = a.leq(prev, next) == b.leq(map[prev], cand) && a.leq(next, prev) == b.leq(cand, map[prev]);
        if (!ok) continue;
        map[next] = cand;
        used[cand] = true;
        if (iso_extend(a, b, map, used, next + 1)) return true;
        used[cand] = false;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> find_order_iso(const Poset& a, const Poset& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::vector<int> map(a.size(), -1);
    std::vector<bool> used(a.size(), false);
    if (iso_extend(a, b, map, used, 0)) return map;
    return std::nullopt;
}

}  // namespace qk
