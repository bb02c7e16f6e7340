#include "qk/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "qk/structure.hpp"

namespace qk {
namespace {

using nlohmann::json;

// ---------------------------------------------------------------- text utils

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

bool valid_name(const std::string& t) {
    if (t.empty() || t == "-" || t == ".") return false;
    return t.find_first_of("[]{}#:=<>") == std::string::npos;
}

// ------------------------------------------------------------- file sections

struct Entry {
    int line = 0;
    std::string lhs, rhs;
    bool used = false;
};

struct Section {
    std::string type, name;
    int line = 0;
    std::vector<Entry> entries;
};

// How a hom value is written: a set of base morphisms for powerset
// quantaloids, a carrier element name for table quantaloids.
struct HomCtx {
    bool free = false;
    const FiniteCategory* base = nullptr;
    const FiniteLattice* carrier = nullptr;
};

std::vector<std::pair<int, int>> covering_pairs(const std::vector<std::vector<bool>>& le) {
    const int n = static_cast<int>(le.size());
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !le[i][j]) continue;
            bool cover = true;
            for (int k = 0; k < n && cover; ++k)
                cover = k == i || k == j || !(le[i][k] && le[k][j]);
            if (cover) out.push_back({i, j});
        }
    return out;
}

std::string render_val(const Quantaloid& q, int s, int t, Val v, const HomCtx& ctx) {
    if (ctx.free) {
        if (v == 0) return "-";
        std::string out = "{";
        const auto& mors = ctx.base->hom(s, t);
        bool first = true;
        for (std::size_t i = 0; i < mors.size(); ++i)
            if (v >> i & 1u) {
                if (!first) out += ' ';
                out += ctx.base->mor_names[mors[i]];
                first = false;
            }
        return out + "}";
    }
    (void)q;
    return ctx.carrier->elems[v];
}

// ------------------------------------------------------------------- parser

struct Parser {
    const Caps& caps;
    InstanceFile out;
    std::vector<Diagnostic> structural;
    std::vector<Diagnostic> semantic;
    // Every block name seen, valid or not; a name that failed validation
    // poisons later references silently instead of cascading errors.
    std::map<std::string, std::string> declared;

    explicit Parser(const Caps& c) : caps(c) {}

    void err(int line, const std::string& code, const std::string& detail) {
        structural.push_back({code, "line " + std::to_string(line) + ": " + detail});
    }

    void sem(const Section& s, const std::vector<Diagnostic>& ds) {
        for (const auto& d : ds)
            semantic.push_back({d.code, "[" + s.type + " " + s.name + "] " + d.detail});
    }

    // --- entry access -------------------------------------------------

    Entry* find_plain(Section& s, const std::string& key) {
        Entry* hit = nullptr;
        for (auto& e : s.entries) {
            if (e.lhs != key) continue;
            if (hit) {
                err(e.line, "ParseError", "duplicate key '" + key + "'");
                return nullptr;
            }
            hit = &e;
        }
        return hit;
    }

    std::optional<std::string> need_plain(Section& s, const std::string& key) {
        Entry* e = find_plain(s, key);
        if (!e) {
            err(s.line, "ParseError", "[" + s.type + " " + s.name + "] missing '" + key + "'");
            return std::nullopt;
        }
        e->used = true;
        return e->rhs;
    }

    std::optional<std::vector<std::string>> need_names(Section& s, const std::string& key) {
        auto rhs = need_plain(s, key);
        if (!rhs) return std::nullopt;
        auto toks = split_ws(*rhs);
        for (const auto& t : toks)
            if (!valid_name(t) && !(key == "mors")) {
                err(s.line, "ParseError", "bad name '" + t + "' in '" + key + "'");
                return std::nullopt;
            }
        return toks;
    }

    void flag_unused(Section& s) {
        for (const auto& e : s.entries)
            if (!e.used) err(e.line, "ParseError", "unknown entry '" + e.lhs + "'");
    }

    // --- shared pieces ------------------------------------------------

    std::optional<std::vector<std::pair<int, int>>> parse_le(
        Section& s, const std::vector<std::string>& elems) {
        auto rhs = need_plain(s, "le");
        if (!rhs) return std::nullopt;
        std::vector<std::pair<int, int>> pairs;
        if (trim(*rhs) == "-") return pairs;
        for (const auto& tok : split_ws(*rhs)) {
            const std::size_t cut = tok.find('<');
            if (cut == std::string::npos || cut == 0 || cut + 1 == tok.size()) {
                err(s.line, "ParseError", "expected NAME<NAME, got '" + tok + "'");
                return std::nullopt;
            }
            const std::string a = tok.substr(0, cut), b = tok.substr(cut + 1);
            const auto ia = std::find(elems.begin(), elems.end(), a);
            const auto ib = std::find(elems.begin(), elems.end(), b);
            if (ia == elems.end() || ib == elems.end()) {
                err(s.line, "ParseError", "unknown element in '" + tok + "'");
                return std::nullopt;
            }
            pairs.push_back({static_cast<int>(ia - elems.begin()),
                             static_cast<int>(ib - elems.begin())});
        }
        return pairs;
    }

    std::optional<Val> parse_val(const Quantaloid& q, int s, int t, const std::string& rhs,
                                 const HomCtx& ctx, int line) {
        const std::string v = trim(rhs);
        if (ctx.free) {
            if (v == "-") return Val{0};
            if (v.size() < 2 || v.front() != '{' || v.back() != '}') {
                err(line, "ParseError", "expected '{...}' or '-', got '" + v + "'");
                return std::nullopt;
            }
            Val mask = 0;
            const auto& mors = ctx.base->hom(s, t);
            for (const auto& tok : split_ws(v.substr(1, v.size() - 2))) {
                bool found = false;
                for (std::size_t i = 0; i < mors.size(); ++i)
                    if (ctx.base->mor_names[mors[i]] == tok) {
                        mask |= Val{1} << i;
                        found = true;
                        break;
                    }
                if (!found) {
                    err(line, "ParseError", "no morphism '" + tok + "' in this hom-set");
                    return std::nullopt;
                }
            }
            return mask;
        }
        const int idx = ctx.carrier->index_of(v);
        if (idx < 0) {
            err(line, "ParseError", "unknown element '" + v + "'");
            return std::nullopt;
        }
        (void)q;
        return static_cast<Val>(idx);
    }

    // Collect `head X .. = rhs` entries into a table keyed by names.
    std::vector<Entry*> keyed_entries(Section& s, const std::string& head, std::size_t keys) {
        std::vector<Entry*> out;
        for (auto& e : s.entries) {
            auto toks = split_ws(e.lhs);
            if (toks.size() == keys + 1 && toks[0] == head) out.push_back(&e);
        }
        return out;
    }

    // --- reference resolution -------------------------------------------
    // 0 = resolved, 1 = declared but invalid (skip quietly), 2 = missing.

    template <typename Map>
    int resolve(const Map& m, const std::string& name, const Section& s,
                typename Map::mapped_type const** hit) {
        auto it = m.find(name);
        if (it != m.end()) {
            *hit = &it->second;
            return 0;
        }
        if (declared.count(name)) return 1;
        err(s.line, "UnresolvedReference",
            "[" + s.type + " " + s.name + "] no earlier block named '" + name + "'");
        return 2;
    }

    QuantaloidPtr free_q_for(const std::string& cat_name) {
        auto it = out.free_qs.find(cat_name);
        if (it != out.free_qs.end()) return it->second;
        QuantaloidPtr q = free_quantaloid(out.categories.at(cat_name), caps);
        out.free_qs.emplace(cat_name, q);
        return q;
    }

    // Resolve a qcategory-or-concrete name; fills cat and ctx.
    int resolve_over(const std::string& name, const Section& s, QCatPtr* cat, HomCtx* ctx) {
        if (auto it = out.qcategories.find(name); it != out.qcategories.end()) {
            *cat = it->second.cat;
            if (it->second.free)
                *ctx = {true, &it->second.cat->Q->base(), nullptr};
            else
                *ctx = {false, nullptr, &out.quantales.at(it->second.over).carrier};
            return 0;
        }
        if (auto it = out.concretes.find(name); it != out.concretes.end()) {
            *cat = it->second.enc;
            *ctx = {true, &it->second.enc->Q->base(), nullptr};
            return 0;
        }
        if (declared.count(name)) return 1;
        err(s.line, "UnresolvedReference",
            "[" + s.type + " " + s.name + "] no earlier block named '" + name + "'");
        return 2;
    }

    // --- block handlers -------------------------------------------------

    void do_poset(Section& s) {
        auto elems = need_names(s, "elems");
        if (!elems) return;
        auto pairs = parse_le(s, *elems);
        if (!pairs) return;
        flag_unused(s);
        auto v = validate_poset(*elems, *pairs);
        if (!v.ok()) return sem(s, v.diagnostics);
        out.posets.emplace(s.name, v.get());
        out.order.push_back({s.type, s.name});
    }

    void do_lattice(Section& s) {
        auto elems = need_names(s, "elems");
        if (!elems) return;
        auto pairs = parse_le(s, *elems);
        if (!pairs) return;
        flag_unused(s);
        auto v = validate_lattice(*elems, *pairs, caps);
        if (!v.ok()) return sem(s, v.diagnostics);
        out.lattices.emplace(s.name, v.get());
        out.order.push_back({s.type, s.name});
    }

    void do_category(Section& s) {
        RawCategory raw;
        auto objects = need_names(s, "objects");
        auto mors = need_names(s, "mors");
        auto ids = need_names(s, "ids");
        if (!objects || !mors || !ids) return;
        raw.objects = *objects;
        auto obj_index = [&](const std::string& n) {
            const auto it = std::find(objects->begin(), objects->end(), n);
            return it == objects->end() ? -1 : static_cast<int>(it - objects->begin());
        };
        for (const auto& tok : *mors) {
            const std::size_t c = tok.find(':');
            const std::size_t a = tok.find("->", c == std::string::npos ? 0 : c);
            if (c == std::string::npos || a == std::string::npos || c == 0) {
                err(s.line, "ParseError", "expected NAME:SRC->DST, got '" + tok + "'");
                return;
            }
            const std::string name = tok.substr(0, c);
            const int src = obj_index(tok.substr(c + 1, a - c - 1));
            const int dst = obj_index(tok.substr(a + 2));
            if (!valid_name(name) || src < 0 || dst < 0) {
                err(s.line, "ParseError", "bad morphism '" + tok + "'");
                return;
            }
            raw.mor_names.push_back(name);
            raw.mor_src.push_back(src);
            raw.mor_dst.push_back(dst);
        }
        auto mor_index = [&](const std::string& n) {
            const auto it = std::find(raw.mor_names.begin(), raw.mor_names.end(), n);
            return it == raw.mor_names.end() ? -1 : static_cast<int>(it - raw.mor_names.begin());
        };
        if (ids->size() != objects->size()) {
            err(s.line, "ParseError", "'ids' must list one morphism per object");
            return;
        }
        for (const auto& n : *ids) {
            const int m = mor_index(n);
            if (m < 0) return err(s.line, "ParseError", "unknown identity '" + n + "'");
            raw.ids.push_back(m);
        }
        bool bad = false;
        for (auto& e : s.entries) {
            auto toks = split_ws(e.lhs);
            if (toks.size() != 3 || toks[1] != ".") continue;
            e.used = true;
            const int g = mor_index(toks[0]), f = mor_index(toks[2]), h = mor_index(trim(e.rhs));
            if (g < 0 || f < 0 || h < 0) {
                err(e.line, "ParseError", "unknown morphism in composite");
                bad = true;
                continue;
            }
            raw.triples.push_back({g, f, h});
        }
        flag_unused(s);
        if (bad) return;
        auto v = validate_category(raw);
        if (!v.ok()) return sem(s, v.diagnostics);
        out.categories.emplace(s.name, v.get());
        out.order.push_back({s.type, s.name});
    }

    void do_quantale(Section& s) {
        auto elems = need_names(s, "elems");
        if (!elems) return;
        for (const auto& e : *elems)
            if (e == "*") return err(s.line, "ParseError", "'*' cannot name a quantale element");
        auto pairs = parse_le(s, *elems);
        auto unit_name = need_plain(s, "unit");
        if (!pairs || !unit_name) return;
        auto elem_index = [&](const std::string& n) {
            const auto it = std::find(elems->begin(), elems->end(), n);
            return it == elems->end() ? -1 : static_cast<int>(it - elems->begin());
        };
        const int unit = elem_index(trim(*unit_name));
        if (unit < 0) return err(s.line, "ParseError", "unknown unit '" + *unit_name + "'");
        const int n = static_cast<int>(elems->size());
        std::vector<std::vector<int>> tensor(n, std::vector<int>(n, -1));
        bool bad = false;
        for (auto& e : s.entries) {
            auto toks = split_ws(e.lhs);
            if (toks.size() != 3 || toks[1] != "*") continue;
            e.used = true;
            const int a = elem_index(toks[0]), b = elem_index(toks[2]),
                      c = elem_index(trim(e.rhs));
            if (a < 0 || b < 0 || c < 0) {
                err(e.line, "ParseError", "unknown element in product");
                bad = true;
                continue;
            }
            if (tensor[a][b] >= 0) {
                err(e.line, "ParseError", "product given twice");
                bad = true;
                continue;
            }
            tensor[a][b] = c;
        }
        flag_unused(s);
        for (int a = 0; a < n && !bad; ++a)
            for (int b = 0; b < n && !bad; ++b)
                if (tensor[a][b] < 0) {
                    err(s.line, "ParseError",
                        "product " + (*elems)[a] + " * " + (*elems)[b] + " not given");
                    bad = true;
                }
        if (bad) return;
        auto lat = validate_lattice(*elems, *pairs, caps);
        if (!lat.ok()) return sem(s, lat.diagnostics);
        auto q = Quantaloid::from_quantale(lat.get(), tensor, unit);
        if (!q.ok()) return sem(s, q.diagnostics);
        out.quantales.emplace(
            s.name, InstanceFile::QuantaleEntry{
                        std::make_shared<const Quantaloid>(q.get()), lat.get()});
        out.order.push_back({s.type, s.name});
    }

    // Shared by qcategory and concrete: parse `objects` with optional
    // per-object extents over `count` base objects named by `base_name`.
    bool parse_extents(Section& s, const std::vector<std::string>& toks, int count,
                       const std::function<int(const std::string&)>& base_index,
                       std::vector<std::string>* names, std::vector<int>* extents) {
        for (const auto& tok : toks) {
            const std::size_t c = tok.find(':');
            if (c == std::string::npos) {
                if (count != 1) {
                    err(s.line, "ParseError", "object '" + tok + "' needs NAME:EXTENT here");
                    return false;
                }
                names->push_back(tok);
                extents->push_back(0);
                continue;
            }
            const std::string n = tok.substr(0, c), e = tok.substr(c + 1);
            const int idx = base_index(e);
            if (!valid_name(n) || idx < 0) {
                err(s.line, "ParseError", "bad object '" + tok + "'");
                return false;
            }
            names->push_back(n);
            extents->push_back(idx);
        }
        return true;
    }

    void do_qcategory(Section& s) {
        auto over = need_plain(s, "over");
        auto objects = need_plain(s, "objects");
        if (!over || !objects) return;
        auto over_toks = split_ws(*over);
        QuantaloidPtr q;
        HomCtx ctx;
        bool free = false;
        std::string over_name;
        if (over_toks.size() == 2 && over_toks[0] == "free") {
            over_name = over_toks[1];
            const FiniteCategory* base = nullptr;
            const int r = resolve(out.categories, over_name, s, &base);
            if (r) return;
            q = free_q_for(over_name);
            ctx = {true, &q->base(), nullptr};
            free = true;
        } else if (over_toks.size() == 1) {
            over_name = over_toks[0];
            const InstanceFile::QuantaleEntry* qe = nullptr;
            const int r = resolve(out.quantales, over_name, s, &qe);
            if (r) return;
            q = qe->q;
            ctx = {false, nullptr, &qe->carrier};
        } else {
            return err(s.line, "ParseError", "expected 'over = NAME' or 'over = free NAME'");
        }
        std::vector<std::string> names;
        std::vector<int> extents;
        auto base_index = [&](const std::string& n) { return q->object_index(n); };
        if (!parse_extents(s, split_ws(*objects), q->object_count(), base_index, &names,
                           &extents))
            return;
        const int n = static_cast<int>(names.size());
        auto obj_index = [&](const std::string& nm) {
            const auto it = std::find(names.begin(), names.end(), nm);
            return it == names.end() ? -1 : static_cast<int>(it - names.begin());
        };
        std::vector<std::vector<Val>> hom(n, std::vector<Val>(n, 0));
        std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
        bool bad = false;
        for (Entry* e : keyed_entries(s, "hom", 2)) {
            e->used = true;
            auto toks = split_ws(e->lhs);
            const int x = obj_index(toks[1]), y = obj_index(toks[2]);
            if (x < 0 || y < 0) {
                err(e->line, "ParseError", "unknown object in '" + e->lhs + "'");
                bad = true;
                continue;
            }
            auto v = parse_val(*q, extents[x], extents[y], e->rhs, ctx, e->line);
            if (!v) {
                bad = true;
                continue;
            }
            given[x][y] = true;
            hom[x][y] = *v;
        }
        flag_unused(s);
        for (int x = 0; x < n && !bad; ++x)
            for (int y = 0; y < n && !bad; ++y)
                if (!given[x][y]) {
                    err(s.line, "ParseError",
                        "hom " + names[x] + " " + names[y] + " not given");
                    bad = true;
                }
        if (bad) return;
        auto v = validate_qcategory(q, names, extents, hom);
        if (!v.ok()) return sem(s, v.diagnostics);
        out.qcategories.emplace(s.name, InstanceFile::QCatEntry{v.get(), free, over_name});
        out.order.push_back({s.type, s.name});
    }

    void do_concrete(Section& s) {
        auto base_name = need_plain(s, "base");
        auto objects = need_plain(s, "objects");
        if (!base_name || !objects) return;
        const std::string bn = trim(*base_name);
        const FiniteCategory* base = nullptr;
        if (resolve(out.categories, bn, s, &base)) return;
        std::vector<std::string> names;
        std::vector<int> extents;
        auto base_index = [&](const std::string& n) { return base->object_index(n); };
        if (!parse_extents(s, split_ws(*objects), base->object_count(), base_index, &names,
                           &extents))
            return;
        QuantaloidPtr q = free_q_for(bn);
        HomCtx ctx{true, &q->base(), nullptr};
        const int n = static_cast<int>(names.size());
        auto obj_index = [&](const std::string& nm) {
            const auto it = std::find(names.begin(), names.end(), nm);
            return it == names.end() ? -1 : static_cast<int>(it - names.begin());
        };
        std::vector<std::vector<Val>> morph(n, std::vector<Val>(n, 0));
        std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
        bool bad = false;
        for (Entry* e : keyed_entries(s, "morph", 2)) {
            e->used = true;
            auto toks = split_ws(e->lhs);
            const int x = obj_index(toks[1]), y = obj_index(toks[2]);
            if (x < 0 || y < 0) {
                err(e->line, "ParseError", "unknown object in '" + e->lhs + "'");
                bad = true;
                continue;
            }
            auto v = parse_val(*q, extents[x], extents[y], e->rhs, ctx, e->line);
            if (!v) {
                bad = true;
                continue;
            }
            given[x][y] = true;
            morph[x][y] = *v;
        }
        flag_unused(s);
        for (int x = 0; x < n && !bad; ++x)
            for (int y = 0; y < n && !bad; ++y)
                if (!given[x][y]) {
                    err(s.line, "ParseError",
                        "morph " + names[x] + " " + names[y] + " not given");
                    bad = true;
                }
        if (bad) return;
        auto v = validate_concrete(*base, names, extents, morph);
        if (!v.ok()) return sem(s, v.diagnostics);
        InstanceFile::ConcreteEntry entry{v.get(), bn, q, nullptr};
        entry.enc = encode(q, entry.c);
        out.concretes.emplace(s.name, std::move(entry));
        out.order.push_back({s.type, s.name});
    }

    void do_qfunctor(Section& s) {
        auto src_n = need_plain(s, "src");
        auto dst_n = need_plain(s, "dst");
        auto map_rhs = need_plain(s, "map");
        if (!src_n || !dst_n || !map_rhs) return;
        flag_unused(s);
        QCatPtr src, dst;
        HomCtx c1, c2;
        if (resolve_over(trim(*src_n), s, &src, &c1) || resolve_over(trim(*dst_n), s, &dst, &c2))
            return;
        std::vector<int> map;
        for (const auto& tok : split_ws(*map_rhs)) {
            const int i = dst->object_index(tok);
            if (i < 0) return err(s.line, "ParseError", "unknown object '" + tok + "'");
            map.push_back(i);
        }
        auto v = validate_qfunctor(src, dst, map);
        if (!v.ok()) return sem(s, v.diagnostics);
        out.qfunctors.emplace(s.name,
                              InstanceFile::QFunctorEntry{trim(*src_n), trim(*dst_n), v.get()});
        out.order.push_back({s.type, s.name});
    }

    void do_qdistributor(Section& s) {
        auto src_n = need_plain(s, "src");
        auto dst_n = need_plain(s, "dst");
        if (!src_n || !dst_n) return;
        QCatPtr src, dst;
        HomCtx ctx, c2;
        if (resolve_over(trim(*src_n), s, &src, &ctx) || resolve_over(trim(*dst_n), s, &dst, &c2))
            return;
        if (src->Q != dst->Q)
            return err(s.line, "ParseError", "feet live over different quantaloids");
        const int n = src->size(), m = dst->size();
        std::vector<std::vector<Val>> mat(n, std::vector<Val>(m, 0));
        std::vector<std::vector<bool>> given(n, std::vector<bool>(m, false));
        bool bad = false;
        for (Entry* e : keyed_entries(s, "dist", 2)) {
            e->used = true;
            auto toks = split_ws(e->lhs);
            const int x = src->object_index(toks[1]), y = dst->object_index(toks[2]);
            if (x < 0 || y < 0) {
                err(e->line, "ParseError", "unknown object in '" + e->lhs + "'");
                bad = true;
                continue;
            }
            auto v = parse_val(*src->Q, src->extent[x], dst->extent[y], e->rhs, ctx, e->line);
            if (!v) {
                bad = true;
                continue;
            }
            given[x][y] = true;
            mat[x][y] = *v;
        }
        flag_unused(s);
        for (int x = 0; x < n && !bad; ++x)
            for (int y = 0; y < m && !bad; ++y)
                if (!given[x][y]) {
                    err(s.line, "ParseError",
                        "dist " + src->objects[x] + " " + dst->objects[y] + " not given");
                    bad = true;
                }
        if (bad) return;
        auto v = validate_qdistributor(src, dst, mat);
        if (!v.ok()) return sem(s, v.diagnostics);
        out.qdistributors.emplace(
            s.name, InstanceFile::QDistributorEntry{trim(*src_n), trim(*dst_n), v.get()});
        out.order.push_back({s.type, s.name});
    }

    // Shared by sink and presheaf: the `at` component table.
    bool parse_components(Section& s, QCatPtr cat, const HomCtx& ctx, int target,
                          std::vector<Val>* comp) {
        const int n = cat->size();
        comp->assign(n, 0);
        std::vector<bool> given(n, false);
        bool bad = false;
        for (Entry* e : keyed_entries(s, "at", 1)) {
            e->used = true;
            auto toks = split_ws(e->lhs);
            const int x = cat->object_index(toks[1]);
            if (x < 0) {
                err(e->line, "ParseError", "unknown object '" + toks[1] + "'");
                bad = true;
                continue;
            }
            auto v = parse_val(*cat->Q, cat->extent[x], target, e->rhs, ctx, e->line);
            if (!v) {
                bad = true;
                continue;
            }
            given[x] = true;
            (*comp)[x] = *v;
        }
        flag_unused(s);
        for (int x = 0; x < n && !bad; ++x)
            if (!given[x]) {
                err(s.line, "ParseError", "at " + cat->objects[x] + " not given");
                bad = true;
            }
        return !bad;
    }

    void do_sink(Section& s) {
        auto over = need_plain(s, "over");
        auto target_n = need_plain(s, "target");
        if (!over || !target_n) return;
        QCatPtr cat;
        HomCtx ctx;
        if (resolve_over(trim(*over), s, &cat, &ctx)) return;
        const int target = cat->Q->object_index(trim(*target_n));
        if (target < 0) return err(s.line, "ParseError", "unknown target '" + *target_n + "'");
        std::vector<Val> comp;
        if (!parse_components(s, cat, ctx, target, &comp)) return;
        out.sinks.emplace(s.name,
                          InstanceFile::SinkEntry{trim(*over), cat, StructuredSink{target, comp}});
        out.order.push_back({s.type, s.name});
    }

    void do_presheaf(Section& s) {
        auto over = need_plain(s, "over");
        auto extent_n = need_plain(s, "extent");
        if (!over || !extent_n) return;
        QCatPtr cat;
        HomCtx ctx;
        if (resolve_over(trim(*over), s, &cat, &ctx)) return;
        const int extent = cat->Q->object_index(trim(*extent_n));
        if (extent < 0) return err(s.line, "ParseError", "unknown extent '" + *extent_n + "'");
        std::vector<Val> comp;
        if (!parse_components(s, cat, ctx, extent, &comp)) return;
        auto v = validate_presheaf(cat, extent, comp);
        if (!v.ok()) return sem(s, v.diagnostics);
        out.presheaves.emplace(s.name, InstanceFile::PresheafEntry{trim(*over), v.get()});
        out.order.push_back({s.type, s.name});
    }

    void handle(Section& s) {
        if (declared.count(s.name)) {
            err(s.line, "ParseError", "a block named '" + s.name + "' already exists");
            return;
        }
        declared[s.name] = s.type;
        if (s.type == "poset") return do_poset(s);
        if (s.type == "lattice") return do_lattice(s);
        if (s.type == "category") return do_category(s);
        if (s.type == "quantale") return do_quantale(s);
        if (s.type == "qcategory") return do_qcategory(s);
        if (s.type == "concrete") return do_concrete(s);
        if (s.type == "qfunctor") return do_qfunctor(s);
        if (s.type == "qdistributor") return do_qdistributor(s);
        if (s.type == "sink") return do_sink(s);
        if (s.type == "presheaf") return do_presheaf(s);
        err(s.line, "ParseError", "unknown block type '" + s.type + "'");
    }
};

}  // namespace

QCatPtr InstanceFile::resolve_qcat(const std::string& name) const {
    if (auto it = qcategories.find(name); it != qcategories.end()) return it->second.cat;
    if (auto it = concretes.find(name); it != concretes.end()) return it->second.enc;
    return nullptr;
}

ParseResult parse_instance(const std::string& text, const Caps& caps) {
    Parser p(caps);
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                p.err(lineno, "ParseError", "unterminated block header");
                continue;
            }
            auto toks = split_ws(line.substr(1, line.size() - 2));
            if (toks.size() != 2 || !valid_name(toks[1])) {
                p.err(lineno, "ParseError", "expected '[type name]'");
                continue;
            }
            sections.push_back({toks[0], toks[1], lineno, {}});
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            p.err(lineno, "ParseError", "expected 'key = value'");
            continue;
        }
        if (sections.empty()) {
            p.err(lineno, "ParseError", "entry outside any block");
            continue;
        }
        sections.back().entries.push_back(
            {lineno, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), false});
    }
    for (auto& s : sections) p.handle(s);

    ParseResult res;
    res.structural = std::move(p.structural);
    res.semantic = std::move(p.semantic);
    if (res.structural.empty() && res.semantic.empty()) res.file = std::move(p.out);
    return res;
}

// ---------------------------------------------------------------- serializer

namespace {

std::string render_le(const std::vector<std::string>& elems,
                      const std::vector<std::vector<bool>>& le) {
    const auto pairs = covering_pairs(le);
    if (pairs.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) out += ' ';
        out += elems[pairs[i].first] + "<" + elems[pairs[i].second];
    }
    return out;
}

std::string join_names(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += xs[i];
    }
    return out;
}

HomCtx ctx_for(const InstanceFile& f, const std::string& over_name) {
    if (auto it = f.qcategories.find(over_name); it != f.qcategories.end()) {
        if (it->second.free) return {true, &it->second.cat->Q->base(), nullptr};
        return {false, nullptr, &f.quantales.at(it->second.over).carrier};
    }
    const auto& ce = f.concretes.at(over_name);
    return {true, &ce.enc->Q->base(), nullptr};
}

void emit_objects(std::ostringstream& o, const QCategory& c) {
    o << "objects =";
    const bool with_extent = c.Q->object_count() > 1;
    for (int i = 0; i < c.size(); ++i) {
        o << ' ' << c.objects[i];
        if (with_extent) o << ':' << c.Q->object_name(c.extent[i]);
    }
    o << '\n';
}

}  // namespace

std::string serialize_instance(const InstanceFile& f) {
    std::ostringstream o;
    bool first = true;
    for (const auto& b : f.order) {
        if (!first) o << '\n';
        first = false;
        o << '[' << b.type << ' ' << b.name << "]\n";
        if (b.type == "poset") {
            const auto& p = f.posets.at(b.name);
            o << "elems = " << join_names(p.elems) << '\n';
            o << "le = " << render_le(p.elems, p.le) << '\n';
        } else if (b.type == "lattice") {
            const auto& l = f.lattices.at(b.name);
            o << "elems = " << join_names(l.elems) << '\n';
            o << "le = " << render_le(l.elems, l.le) << '\n';
        } else if (b.type == "category") {
            const auto& c = f.categories.at(b.name);
            o << "objects = " << join_names(c.objects) << '\n';
            o << "mors =";
            for (int m = 0; m < c.mor_count(); ++m)
                o << ' ' << c.mor_names[m] << ':' << c.objects[c.mor_src[m]] << "->"
                  << c.objects[c.mor_dst[m]];
            o << '\n';
            o << "ids =";
            for (int x = 0; x < c.object_count(); ++x) o << ' ' << c.mor_names[c.ids[x]];
            o << '\n';
            auto is_id = [&](int m) {
                return std::find(c.ids.begin(), c.ids.end(), m) != c.ids.end();
            };
            for (int g = 0; g < c.mor_count(); ++g)
                for (int fm = 0; fm < c.mor_count(); ++fm) {
                    if (is_id(g) || is_id(fm) || c.mor_src[g] != c.mor_dst[fm]) continue;
                    o << c.mor_names[g] << " . " << c.mor_names[fm] << " = "
                      << c.mor_names[c.comp[g][fm]] << '\n';
                }
        } else if (b.type == "quantale") {
            const auto& qe = f.quantales.at(b.name);
            const auto& l = qe.carrier;
            o << "elems = " << join_names(l.elems) << '\n';
            o << "le = " << render_le(l.elems, l.le) << '\n';
            Val unit = qe.q->id(0);
            o << "unit = " << l.elems[unit] << '\n';
            for (int a = 0; a < l.size(); ++a)
                for (int c = 0; c < l.size(); ++c)
                    o << l.elems[a] << " * " << l.elems[c] << " = "
                      << l.elems[qe.q->compose(0, 0, 0, static_cast<Val>(a),
                                               static_cast<Val>(c))]
                      << '\n';
        } else if (b.type == "qcategory") {
            const auto& e = f.qcategories.at(b.name);
            o << "over = " << (e.free ? "free " : "") << e.over << '\n';
            emit_objects(o, *e.cat);
            const HomCtx ctx = ctx_for(f, b.name);
            for (int x = 0; x < e.cat->size(); ++x)
                for (int y = 0; y < e.cat->size(); ++y)
                    o << "hom " << e.cat->objects[x] << ' ' << e.cat->objects[y] << " = "
                      << render_val(*e.cat->Q, e.cat->extent[x], e.cat->extent[y],
                                    e.cat->h(x, y), ctx)
                      << '\n';
        } else if (b.type == "concrete") {
            const auto& e = f.concretes.at(b.name);
            o << "base = " << e.base << '\n';
            o << "objects =";
            const bool with_extent = e.c.base.object_count() > 1;
            for (int i = 0; i < e.c.size(); ++i) {
                o << ' ' << e.c.objects[i];
                if (with_extent) o << ':' << e.c.base.objects[e.c.extent[i]];
            }
            o << '\n';
            const HomCtx ctx{true, &e.enc->Q->base(), nullptr};
            for (int x = 0; x < e.c.size(); ++x)
                for (int y = 0; y < e.c.size(); ++y)
                    o << "morph " << e.c.objects[x] << ' ' << e.c.objects[y] << " = "
                      << render_val(*e.enc->Q, e.c.extent[x], e.c.extent[y], e.c.morph[x][y],
                                    ctx)
                      << '\n';
        } else if (b.type == "qfunctor") {
            const auto& e = f.qfunctors.at(b.name);
            o << "src = " << e.src << '\n';
            o << "dst = " << e.dst << '\n';
            o << "map =";
            for (int i : e.f.map) o << ' ' << e.f.dst->objects[i];
            o << '\n';
        } else if (b.type == "qdistributor") {
            const auto& e = f.qdistributors.at(b.name);
            o << "src = " << e.src << '\n';
            o << "dst = " << e.dst << '\n';
            const HomCtx ctx = ctx_for(f, e.src);
            for (int x = 0; x < e.d.src->size(); ++x)
                for (int y = 0; y < e.d.dst->size(); ++y)
                    o << "dist " << e.d.src->objects[x] << ' ' << e.d.dst->objects[y] << " = "
                      << render_val(*e.d.src->Q, e.d.src->extent[x], e.d.dst->extent[y],
                                    e.d.mat[x][y], ctx)
                      << '\n';
        } else if (b.type == "sink") {
            const auto& e = f.sinks.at(b.name);
            o << "over = " << e.over << '\n';
            o << "target = " << e.cat->Q->object_name(e.sink.target) << '\n';
            const HomCtx ctx = ctx_for(f, e.over);
            for (int x = 0; x < e.cat->size(); ++x)
                o << "at " << e.cat->objects[x] << " = "
                  << render_val(*e.cat->Q, e.cat->extent[x], e.sink.target, e.sink.comp[x], ctx)
                  << '\n';
        } else if (b.type == "presheaf") {
            const auto& e = f.presheaves.at(b.name);
            o << "over = " << e.over << '\n';
            o << "extent = " << e.p.over->Q->object_name(e.p.extent) << '\n';
            const HomCtx ctx = ctx_for(f, e.over);
            for (int x = 0; x < e.p.over->size(); ++x)
                o << "at " << e.p.over->objects[x] << " = "
                  << render_val(*e.p.over->Q, e.p.over->extent[x], e.p.extent, e.p.comp[x],
                                ctx)
                  << '\n';
        }
    }
    return o.str();
}

// ------------------------------------------------------------------ commands

namespace {

CommandResult finish(int status, std::string text, json j, std::string output = {},
                     std::string dot = {}) {
    j["status"] = status;
    text += "\n---report---\n" + j.dump(2) + "\n---report---\n";
    return {status, std::move(text), std::move(output), std::move(dot)};
}

CommandResult input_error(const std::string& command, const std::string& msg) {
    return finish(2, "error: " + msg, json{{"command", command}, {"error", msg}});
}

CommandResult too_large(const std::string& command, const TooLargeError& e) {
    return finish(3, std::string("too large: ") + e.what(),
                  json{{"command", command}, {"error", e.what()}, {"estimate", e.estimate}});
}

/// Codes that violate a composition/identity law render under one banner so
/// table problems are greppable regardless of which validator found them.
std::string display_code(const std::string& code) {
    static const std::set<std::string> comp = {"BadComposite", "MissingComposite",
                                               "NotAssociative", "IdentityLaw", "NotUnital",
                                               "CompositionFailure"};
    return comp.count(code) ? "CompositionFailure" : code;
}

std::string class_names(const QCategory& e, const ObjClass& c) {
    std::string out;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        if (i) out += ' ';
        out += e.objects[c.members[i]];
    }
    return out;
}

std::string hasse_dot(const std::string& name, const std::vector<std::string>& elems,
                      const std::vector<std::vector<bool>>& le) {
    std::ostringstream o;
    o << "graph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (std::size_t i = 0; i < elems.size(); ++i)
        o << "  n" << i << " [label=\"" << elems[i] << "\"];\n";
    for (const auto& [i, j] : covering_pairs(le)) o << "  n" << i << " -- n" << j << ";\n";
    o << "}\n";
    return o.str();
}

std::string hom_table(const InstanceFile& f, const std::string& name, const QCategory& c) {
    const HomCtx ctx = ctx_for(f, name);
    const int n = c.size();
    std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
    for (int y = 0; y < n; ++y) cells[0][y + 1] = c.objects[y];
    for (int x = 0; x < n; ++x) {
        cells[x + 1][0] = c.objects[x];
        for (int y = 0; y < n; ++y)
            cells[x + 1][y + 1] = render_val(*c.Q, c.extent[x], c.extent[y], c.h(x, y), ctx);
    }
    std::vector<std::size_t> width(n + 1, 0);
    for (const auto& row : cells)
        for (int y = 0; y <= n; ++y) width[y] = std::max(width[y], row[y].size());
    std::ostringstream o;
    for (const auto& row : cells) {
        for (int y = 0; y <= n; ++y) {
            if (y) o << "  ";
            o << row[y] << std::string(width[y] - row[y].size(), ' ');
        }
        o << '\n';
    }
    return o.str();
}

/// Names usable in an instance file: braces dropped, other reserved
/// characters and whitespace replaced, empties and duplicates made unique.
std::vector<std::string> file_safe_names(const std::vector<std::string>& in) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < in.size(); ++i) {
        std::string n;
        for (char ch : in[i]) {
            if (ch == '{' || ch == '}') continue;
            n += std::string(" \t[]#:=<>").find(ch) != std::string::npos ? '_' : ch;
        }
        if (n.empty() || n == "-" || n == ".") n = "cut" + std::to_string(i);
        while (seen.count(n)) n += "_" + std::to_string(i);
        seen.insert(n);
        out.push_back(n);
    }
    return out;
}

/// Independent count of the cut completion: close the principal down-sets
/// under pairwise intersection, plus the full carrier.
long long cut_count(const Poset& p) {
    const int n = p.size();
    if (n > 20) throw TooLargeError("cut oracle sweep", 1LL << n);
    std::set<unsigned> cuts;
    unsigned full = n == 32 ? ~0u : (1u << n) - 1;
    cuts.insert(full);
    std::vector<unsigned> down(n, 0);
    for (int u = 0; u < n; ++u)
        for (int i = 0; i < n; ++i)
            if (p.leq(i, u)) down[u] |= 1u << i;
    for (int u = 0; u < n; ++u) cuts.insert(down[u]);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<unsigned> snapshot(cuts.begin(), cuts.end());
        for (unsigned a : snapshot)
            for (unsigned b : snapshot)
                if (cuts.insert(a & b).second) grew = true;
    }
    return static_cast<long long>(cuts.size());
}

/// The order on objects read off a category enriched in a two-element
/// quantale; empty when the enrichment is not two-valued or the relation
/// fails antisymmetry.
std::optional<Poset> order_of(const QCategory& c) {
    if (c.Q->is_free() || c.Q->object_count() != 1 || c.Q->hom_size(0, 0) != 2)
        return std::nullopt;
    const Val top = c.Q->top(0, 0);
    std::vector<std::vector<bool>> le(c.size(), std::vector<bool>(c.size()));
    for (int x = 0; x < c.size(); ++x)
        for (int y = 0; y < c.size(); ++y) le[x][y] = c.h(x, y) == top;
    auto v = validate_poset_table(c.objects, le);
    if (!v.ok()) return std::nullopt;
    return v.get();
}

/// Rebuild the two-element quantale and a lattice's category over it so a
/// freshly computed structure can be written as a self-contained file.
void emit_two_and_order(InstanceFile* out, const std::string& qname, const std::string& cname,
                        const Poset& p) {
    auto lat = validate_lattice({"0", "1"}, {{0, 1}}).get();
    auto q = std::make_shared<const Quantaloid>(
        Quantaloid::from_quantale(lat, {{0, 0}, {0, 1}}, 1).get());
    out->quantales.emplace(qname, InstanceFile::QuantaleEntry{q, lat});
    out->order.push_back({"quantale", qname});
    const int n = p.size();
    std::vector<std::vector<Val>> hom(n, std::vector<Val>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) hom[x][y] = p.le[x][y] ? 1 : 0;
    auto cat = validate_qcategory(q, p.elems, std::vector<int>(n, 0), hom);
    engine_check(cat.ok(), "an order stopped being a category over the two-element quantale");
    out->qcategories.emplace(cname, InstanceFile::QCatEntry{cat.get(), false, qname});
    out->order.push_back({"qcategory", cname});
}

const char* condition_labels[8] = {
    "embedding has a left adjoint", "all weighted colimits exist",
    "all presheaves have suprema",  "tensored and conically cocomplete",
    "dual embedding has a left adjoint", "all weighted limits exist",
    "all copresheaves have infima", "cotensored and conically complete"};

}  // namespace

CommandResult run_validate(const std::string& text, const Caps& caps) {
    try {
        ParseResult pr = parse_instance(text, caps);
        std::ostringstream o;
        json j{{"command", "validate"}};
        json js = json::array(), jm = json::array();
        for (const auto& d : pr.structural) {
            o << d.code << ": " << d.detail << '\n';
            js.push_back({{"code", d.code}, {"detail", d.detail}});
        }
        for (const auto& d : pr.semantic) {
            o << display_code(d.code) << ": " << d.detail;
            if (display_code(d.code) != d.code) o << " (" << d.code << ")";
            o << '\n';
            jm.push_back({{"code", d.code}, {"detail", d.detail}});
        }
        j["structural"] = js;
        j["semantic"] = jm;
        if (pr.file) {
            j["blocks"] = pr.file->order.size();
            o << "ok: " << pr.file->order.size() << " blocks validated";
        } else {
            o << "invalid: " << (pr.structural.size() + pr.semantic.size()) << " problems";
        }
        return finish(pr.status(), o.str(), std::move(j));
    } catch (const TooLargeError& e) {
        return too_large("validate", e);
    }
}

CommandResult run_check(const InstanceFile& f, const std::string& target,
                        const std::string& which, const Caps& caps) {
    try {
        QCatPtr cat = f.resolve_qcat(target);
        if (!cat) return input_error("check", "no qcategory or concrete named '" + target + "'");
        json j{{"command", "check"}, {"target", target}, {"which", which}};
        std::ostringstream o;
        int status = 0;
        if (which == "total") {
            const auto ps = enumerate_presheaves(cat, -1, caps);
            FlagWitness t = is_total(cat, caps);
            j["total"] = t.value;
            j["presheaves"] = ps.size();
            if (t.value) {
                o << "total: true (" << ps.size() << " presheaves, all suprema found)";
            } else {
                o << "total: false; witness: " << t.witness;
                j["witness"] = t.witness;
                status = 1;
            }
        } else if (which == "topological") {
            TopologicalReport r = is_topological(cat, caps);
            j["topological"] = r.flag.value;
            j["sinks"] = r.sinks;
            if (r.flag.value) {
                o << "topological: true (" << r.sinks << " sinks, all liftings found)";
            } else {
                std::string witness = r.flag.witness;
                for (const auto& p : enumerate_presheaves(cat, -1, caps)) {
                    if (supremum(p)) continue;
                    bool empty = true;
                    for (int x = 0; x < cat->size() && empty; ++x)
                        empty = p.comp[x] == cat->Q->bottom(cat->extent[x], p.extent);
                    if (empty) {
                        witness = "the empty sink at " + cat->Q->object_name(p.extent);
                        break;
                    }
                }
                o << "topological: false; witness: " << witness;
                j["witness"] = witness;
                status = 1;
            }
        } else if (which == "all") {
            EquivalenceReport er = verify_totality_equivalences(cat, caps);
            json jc = json::array();
            for (int i = 0; i < 8; ++i) {
                o << condition_labels[i] << ": " << (er.conditions[i] ? "true" : "false")
                  << '\n';
                jc.push_back(er.conditions[i]);
            }
            o << "consistent: yes";
            j["conditions"] = jc;
            j["value"] = er.value;
            j["consistent"] = true;
            if (auto it = f.concretes.find(target); it != f.concretes.end()) {
                DualityReport dr = check_topological_duality(it->second.qfree, it->second.c, caps);
                o << "\ntopological: " << (dr.topological.value ? "true" : "false")
                  << "; transpose topological: " << (dr.dual_topological.value ? "true" : "false")
                  << "; fibred: " << (dr.fibred.value ? "true" : "false")
                  << "; cofibred: " << (dr.cofibred.value ? "true" : "false")
                  << "; fibres complete: " << (dr.fibres_complete.value ? "true" : "false")
                  << "; agree: " << (dr.agree ? "yes" : "no");
                j["duality"] = {{"topological", dr.topological.value},
                                {"dual_topological", dr.dual_topological.value},
                                {"fibred", dr.fibred.value},
                                {"cofibred", dr.cofibred.value},
                                {"fibres_complete", dr.fibres_complete.value},
                                {"agree", dr.agree}};
            }
            status = er.value ? 0 : 1;
        } else {
            return input_error("check", "unknown check '" + which + "'");
        }
        return finish(status, o.str(), std::move(j));
    } catch (const TooLargeError& e) {
        return too_large("check", e);
    }
}

CommandResult run_complete(const InstanceFile& f, const std::string& target,
                           const std::string& mode, bool with_dot, const Caps& caps) {
    try {
        json j{{"command", "complete"}, {"target", target}, {"mode", mode}};
        std::ostringstream o;
        InstanceFile outf;
        std::string dot;
        if (mode == "macneille") {
            const Poset* p = nullptr;
            Poset from_lattice;
            if (auto it = f.posets.find(target); it != f.posets.end()) {
                p = &it->second;
            } else if (auto lt = f.lattices.find(target); lt != f.lattices.end()) {
                from_lattice = lt->second.poset();
                p = &from_lattice;
            } else {
                return input_error("complete", "no poset or lattice named '" + target + "'");
            }
            MacNeilleResult mr = macneille_completion(*p, caps);
            const long long oracle = cut_count(*p);
            const bool match = oracle == mr.lattice.size();
            engine_check(match, "the cut completion disagrees with the cut count");
            o << "completion has " << mr.lattice.size() << " elements; matches cut oracle: "
              << (match ? "yes" : "no");
            j["elements"] = mr.lattice.size();
            j["oracle"] = oracle;
            j["matches_oracle"] = match;
            // Cut names describe subsets and are not valid file names; the
            // emitted block renames them while the diagram keeps the pretty
            // labels.
            FiniteLattice named = mr.lattice;
            named.elems = file_safe_names(mr.lattice.elems);
            json je = json::array();
            for (std::size_t i = 0; i < mr.embed.size(); ++i)
                je.push_back({{"from", p->elems[i]},
                              {"to", named.elems[mr.embed[i]]},
                              {"cut", mr.lattice.elems[mr.embed[i]]}});
            j["embedding"] = je;
            outf.lattices.emplace(target + "_macneille", named);
            outf.order.push_back({"lattice", target + "_macneille"});
            if (with_dot) dot = hasse_dot(target + "_macneille", mr.lattice.elems, mr.lattice.le);
        } else if (mode == "reconstruct") {
            const FiniteLattice* l = nullptr;
            FiniteLattice from_poset;
            if (auto it = f.lattices.find(target); it != f.lattices.end()) {
                l = &it->second;
            } else if (auto pt = f.posets.find(target); pt != f.posets.end()) {
                auto v = validate_lattice(pt->second, caps);
                if (!v.ok())
                    return input_error("complete", "'" + target + "' is not a lattice");
                from_poset = v.get();
                l = &from_poset;
            } else {
                return input_error("complete", "no lattice named '" + target + "'");
            }
            LatticeRecon lr = lattice_reconstruction(*l, caps);
            std::vector<std::string> jn, mn;
            for (int i : lr.j_irr) jn.push_back(l->elems[i]);
            for (int i : lr.m_irr) mn.push_back(l->elems[i]);
            o << "order isomorphic to the fixed points: yes (J={" << join_names(jn) << "}, M={"
              << join_names(mn) << "})";
            j["isomorphic"] = true;
            j["join_irreducibles"] = jn;
            j["meet_irreducibles"] = mn;
            auto ord = order_of(*lr.ic.cat);
            engine_check(ord.has_value(), "the fixed points of an order lost their order");
            auto lat = validate_lattice(*ord, caps);
            engine_check(lat.ok(), "the fixed points of a lattice stopped being a lattice");
            outf.lattices.emplace(target + "_reconstructed", lat.get());
            outf.order.push_back({"lattice", target + "_reconstructed"});
            if (with_dot) dot = hasse_dot(target + "_reconstructed", ord->elems, ord->le);
        } else if (mode == "isbell") {
            auto it = f.qdistributors.find(target);
            if (it == f.qdistributors.end())
                return input_error("complete", "no qdistributor named '" + target + "'");
            const auto& de = it->second;
            IsbellCat ic = isbell_category(de.d, caps);
            IsbellLawReport laws = verify_isbell_laws(de.d, caps);
            o << "fixed points: " << ic.points.size() << " of " << ic.all.size()
              << " presheaves; transform laws verified on " << laws.pairs << " pairs";
            j["fixed_points"] = ic.points.size();
            j["presheaves"] = ic.all.size();
            j["law_pairs"] = laws.pairs;
            std::string certificate;
            if (dist_eq(de.d, identity_distributor(de.d.src)) &&
                is_total(de.d.src, caps).value) {
                auto eq = find_equivalence(ic.cat, de.d.src, caps);
                engine_check(eq.has_value(),
                             "the fixed points of the identity transform of a complete "
                             "category fail to reproduce it");
                certificate = "trivial (equivalent to the source)";
            } else {
                certificate =
                    "fixed points form the completion; equivalence with the source not claimed";
            }
            o << "\ncertificate: " << certificate;
            j["certificate"] = certificate;
            // A self-contained output file: the quantale or base category
            // first, then the fixed-point category over it.
            const std::string fixed = target + "_fixed";
            if (auto oc = order_of(*ic.cat)) {
                emit_two_and_order(&outf, "two", fixed, *oc);
            } else {
                // Reuse the foot's own over-chain blocks.
                std::string root;
                bool free = false;
                if (auto qc = f.qcategories.find(de.src); qc != f.qcategories.end()) {
                    root = qc->second.over;
                    free = qc->second.free;
                } else {
                    root = f.concretes.at(de.src).base;
                    free = true;
                }
                if (free) {
                    outf.categories.emplace(root, f.categories.at(root));
                    outf.order.push_back({"category", root});
                    outf.free_qs.emplace(root, de.d.src->Q);
                } else {
                    outf.quantales.emplace(root, f.quantales.at(root));
                    outf.order.push_back({"quantale", root});
                }
                outf.qcategories.emplace(fixed, InstanceFile::QCatEntry{ic.cat, free, root});
                outf.order.push_back({"qcategory", fixed});
            }
        } else {
            return input_error("complete", "unknown mode '" + mode + "'");
        }
        return finish(0, o.str(), std::move(j), serialize_instance(outf), std::move(dot));
    } catch (const TooLargeError& e) {
        return too_large("complete", e);
    }
}

CommandResult run_final_lift(const InstanceFile& f, const std::string& sink, const Caps& caps) {
    (void)caps;
    try {
        auto it = f.sinks.find(sink);
        if (it == f.sinks.end()) return input_error("final-lift", "no sink named '" + sink + "'");
        const auto& se = it->second;
        Presheaf p = normalize_sink(se.cat, se.sink);
        auto lift = final_lift(se.cat, se.sink);
        json j{{"command", "final-lift"}, {"sink", sink}};
        std::ostringstream o;
        o << "normalized: " << render_presheaf(p) << '\n';
        int status = 0;
        if (lift) {
            o << "lift: " << se.cat->objects[lift->rep()] << " (class {"
              << class_names(*se.cat, *lift) << "})";
            j["lift"] = se.cat->objects[lift->rep()];
            json jc = json::array();
            for (int m : lift->members) jc.push_back(se.cat->objects[m]);
            j["class"] = jc;
        } else {
            o << "lift: none";
            j["lift"] = nullptr;
            status = 1;
        }
        return finish(status, o.str(), std::move(j));
    } catch (const TooLargeError& e) {
        return too_large("final-lift", e);
    }
}

CommandResult run_extend(const InstanceFile& f, const std::string& fname,
                         const std::string& gname, const Caps& caps) {
    try {
        auto fit = f.qfunctors.find(fname);
        auto git = f.qfunctors.find(gname);
        if (fit == f.qfunctors.end())
            return input_error("extend", "no qfunctor named '" + fname + "'");
        if (git == f.qfunctors.end())
            return input_error("extend", "no qfunctor named '" + gname + "'");
        auto h = injective_extension(fit->second.f, git->second.f, caps);
        json j{{"command", "extend"}, {"functor", fname}, {"along", gname}};
        if (!h.ok()) {
            std::ostringstream o;
            json jd = json::array();
            for (const auto& d : h.diagnostics) {
                o << d.code << ": " << d.detail << '\n';
                jd.push_back({{"code", d.code}, {"detail", d.detail}});
            }
            o << "no extension";
            j["diagnostics"] = jd;
            return finish(1, o.str(), std::move(j));
        }
        InstanceFile outf;
        const std::string hname = fname + "_ext";
        outf.qfunctors.emplace(
            hname, InstanceFile::QFunctorEntry{git->second.dst, fit->second.dst, h.get()});
        outf.order.push_back({"qfunctor", hname});
        std::ostringstream o;
        o << "extension found; composite agrees with the original on every object: yes";
        json jm = json::array();
        for (int i : h.get().map) jm.push_back(h.get().dst->objects[i]);
        j["map"] = jm;
        return finish(0, o.str(), std::move(j), serialize_instance(outf));
    } catch (const TooLargeError& e) {
        return too_large("extend", e);
    }
}

CommandResult run_export_dot(const InstanceFile& f, const std::string& target) {
    json j{{"command", "export-dot"}, {"target", target}};
    const std::vector<std::string>* elems = nullptr;
    const std::vector<std::vector<bool>>* le = nullptr;
    Poset from_cat;
    if (auto it = f.posets.find(target); it != f.posets.end()) {
        elems = &it->second.elems;
        le = &it->second.le;
    } else if (auto it = f.lattices.find(target); it != f.lattices.end()) {
        elems = &it->second.elems;
        le = &it->second.le;
    } else if (QCatPtr cat = f.resolve_qcat(target)) {
        auto ord = order_of(*cat);
        if (!ord) {
            std::ostringstream o;
            o << "not order-valued; rendering the hom table instead";
            j["drawable"] = false;
            return finish(0, o.str(), std::move(j), hom_table(f, target, *cat));
        }
        from_cat = std::move(*ord);
        elems = &from_cat.elems;
        le = &from_cat.le;
    } else {
        return input_error("export-dot", "no drawable block named '" + target + "'");
    }
    const auto edges = covering_pairs(*le);
    std::ostringstream o;
    o << "nodes: " << elems->size() << "; covering edges: " << edges.size();
    j["drawable"] = true;
    j["nodes"] = elems->size();
    j["edges"] = edges.size();
    return finish(0, o.str(), std::move(j), {}, hasse_dot(target, *elems, *le));
}

}  // namespace qk
