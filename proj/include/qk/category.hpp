#pragma once

#include <array>
#include <string>
#include <vector>

#include "qk/config.hpp"

namespace qk {

/// Finite category: named objects, named morphisms with source/target,
/// identities, and a composition table that is total on composable pairs.
/// Values of this type satisfy the category laws; build via validate_category.
struct FiniteCategory {
    std::vector<std::string> objects;
    std::vector<std::string> mor_names;
    std::vector<int> mor_src, mor_dst;
    std::vector<int> ids;                             // object -> identity morphism
    std::vector<std::vector<std::vector<int>>> homs;  // [s][t] -> ordered morphism ids
    std::vector<int> hom_pos;                         // morphism -> index inside its hom list
    std::vector<std::vector<int>> comp;               // comp[g][f] = g after f, -1 if typed wrong

    int object_count() const { return static_cast<int>(objects.size()); }
    int mor_count() const { return static_cast<int>(mor_names.size()); }
    int compose(int g, int f) const { return comp[g][f]; }
    int id(int s) const { return ids[s]; }
    const std::vector<int>& hom(int s, int t) const { return homs[s][t]; }
    int object_index(const std::string& name) const;
    int mor_index(const std::string& name) const;
};

/// Unchecked presentation. Composition is given as triples g . f = h;
/// composites with identities may be omitted and are filled in.
struct RawCategory {
    std::vector<std::string> objects;
    std::vector<std::string> mor_names;
    std::vector<int> mor_src, mor_dst;
    std::vector<int> ids;                     // -1 when not declared
    std::vector<std::array<int, 3>> triples;  // (g, f, h)
};

/// Diagnoses MissingIdentity, IdentityLaw, MissingComposite, BadComposite,
/// NotAssociative, DuplicateName.
Checked<FiniteCategory> validate_category(const RawCategory& raw);

FiniteCategory opposite(const FiniteCategory& b);
FiniteCategory terminal_category();

}  // namespace qk
