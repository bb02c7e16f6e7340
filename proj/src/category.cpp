#include "qk/category.hpp"

namespace qk {

int FiniteCategory::object_index(const std::string& name) const {
    for (int i = 0; i < object_count(); ++i)
        if (objects[i] == name) return i;
    return -1;
}

int FiniteCategory::mor_index(const std::string& name) const {
    for (int i = 0; i < mor_count(); ++i)
        if (mor_names[i] == name) return i;
    return -1;
}

Checked<FiniteCategory> validate_category(const RawCategory& raw) {
    Checked<FiniteCategory> res;
    auto& diags = res.diagnostics;
    const int no = static_cast<int>(raw.objects.size());
    const int nm = static_cast<int>(raw.mor_names.size());

    for (int i = 0; i < no; ++i)
        for (int j = i + 1; j < no; ++j)
            if (raw.objects[i] == raw.objects[j]) diags.push_back({"DuplicateName", raw.objects[i]});
    for (int i = 0; i < nm; ++i)
        for (int j = i + 1; j < nm; ++j)
            if (raw.mor_names[i] == raw.mor_names[j]) diags.push_back({"DuplicateName", raw.mor_names[i]});
    for (int f = 0; f < nm; ++f)
        if (raw.mor_src[f] < 0 || raw.mor_src[f] >= no || raw.mor_dst[f] < 0 || raw.mor_dst[f] >= no)
            diags.push_back({"BadIndex", raw.mor_names[f]});
    if (!diags.empty()) return res;

    FiniteCategory c;
    c.objects = raw.objects;
    c.mor_names = raw.mor_names;
    c.mor_src = raw.mor_src;
    c.mor_dst = raw.mor_dst;
    c.ids = raw.ids;
    for (int s = 0; s < no; ++s) {
        int i = s < static_cast<int>(raw.ids.size()) ? raw.ids[s] : -1;
        if (i < 0 || i >= nm || raw.mor_src[i] != s || raw.mor_dst[i] != s)
            diags.push_back({"MissingIdentity", raw.objects[s]});
    }
    if (!diags.empty()) return res;

    c.homs.assign(no, std::vector<std::vector<int>>(no));
    c.hom_pos.assign(nm, -1);
    for (int f = 0; f < nm; ++f) {
        auto& list = c.homs[c.mor_src[f]][c.mor_dst[f]];
        c.hom_pos[f] = static_cast<int>(list.size());
        list.push_back(f);
    }

    c.comp.assign(nm, std::vector<int>(nm, -1));
    auto put = [&](int g, int f, int h) {
        if (c.mor_dst[f] != c.mor_src[g] || c.mor_src[h] != c.mor_src[f] || c.mor_dst[h] != c.mor_dst[g]) {
            diags.push_back({"BadComposite", c.mor_names[g] + " . " + c.mor_names[f] + " = " + c.mor_names[h]});
            return;
        }
        if (c.comp[g][f] != -1 && c.comp[g][f] != h) {
            diags.push_back({"BadComposite", "conflicting entries for " + c.mor_names[g] + " . " + c.mor_names[f]});
            return;
        }
        c.comp[g][f] = h;
    };
    for (auto [g, f, h] : raw.triples) {
        if (g < 0 || g >= nm || f < 0 || f >= nm || h < 0 || h >= nm) {
            diags.push_back({"BadIndex", "composition triple out of range"});
            return res;
        }
        put(g, f, h);
    }
    // Identity composites are forced; a listed triple that disagrees is a law
    // violation, not a parse problem.
    for (int f = 0; f < nm; ++f) {
        int it = c.ids[c.mor_dst[f]], is = c.ids[c.mor_src[f]];
        if (c.comp[it][f] != -1 && c.comp[it][f] != f)
            diags.push_back({"IdentityLaw", c.mor_names[it] + " . " + c.mor_names[f]});
        if (c.comp[f][is] != -1 && c.comp[f][is] != f)
            diags.push_back({"IdentityLaw", c.mor_names[f] + " . " + c.mor_names[is]});
        c.comp[it][f] = f;
        c.comp[f][is] = f;
    }
    if (!diags.empty()) return res;

    for (int g = 0; g < nm; ++g)
        for (int f = 0; f < nm; ++f)
            if (c.mor_dst[f] == c.mor_src[g] && c.comp[g][f] == -1)
                diags.push_back({"MissingComposite", c.mor_names[g] + " . " + c.mor_names[f]});
    if (!diags.empty()) return res;

    for (int h = 0; h < nm; ++h)
        for (int g = 0; g < nm; ++g) {
            if (c.mor_dst[g] != c.mor_src[h]) continue;
            for (int f = 0; f < nm; ++f) {
                if (c.mor_dst[f] != c.mor_src[g]) continue;
                if (c.comp[h][c.comp[g][f]] != c.comp[c.comp[h][g]][f])
                    diags.push_back({"NotAssociative",
                                     c.mor_names[h] + " . " + c.mor_names[g] + " . " + c.mor_names[f]});
            }
        }
    if (!diags.empty()) return res;

    res.value = std::move(c);
    return res;
}

FiniteCategory opposite(const FiniteCategory& b) {
    FiniteCategory o = b;
    std::swap(o.mor_src, o.mor_dst);
    const int no = b.object_count(), nm = b.mor_count();
    o.homs.assign(no, std::vector<std::vector<int>>(no));
    for (int s = 0; s < no; ++s)
        for (int t = 0; t < no; ++t) o.homs[s][t] = b.homs[t][s];
    for (int g = 0; g < nm; ++g)
        for (int f = 0; f < nm; ++f) o.comp[g][f] = b.comp[f][g];
    return o;
}

FiniteCategory terminal_category() {
    RawCategory raw;
    raw.objects = {"*"};
    raw.mor_names = {"1"};
    raw.mor_src = {0};
    raw.mor_dst = {0};
    raw.ids = {0};
    return validate_category(raw).get();
}

}  // namespace qk
