#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "qk/io.hpp"
#include "qk/structure.hpp"

using namespace qk;

namespace {

std::string read_fixture(const char* name) {
    std::ifstream in(std::string(QK_FIXTURE_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// The human-readable lines, without the machine block appended at the end.
std::string prose(const CommandResult& r) { return r.text.substr(0, r.text.find("---report---")); }

bool same_one_object_quantaloid(const Quantaloid& x, const Quantaloid& y) {
    if (x.object_count() != 1 || y.object_count() != 1) return false;
    const int n = x.hom_size(0, 0);
    if (n != y.hom_size(0, 0) || x.id(0) != y.id(0)) return false;
    for (Val a = 0; a < static_cast<Val>(n); ++a)
        for (Val b = 0; b < static_cast<Val>(n); ++b) {
            if (x.compose(0, 0, 0, a, b) != y.compose(0, 0, 0, a, b)) return false;
            if (x.leq(0, 0, a, b) != y.leq(0, 0, a, b)) return false;
        }
    return true;
}

const char* two_block =
    "[quantale two]\n"
    "elems = 0 1\n"
    "le = 0<1\n"
    "unit = 1\n"
    "0 * 0 = 0\n0 * 1 = 0\n1 * 0 = 0\n1 * 1 = 1\n";

std::string with_two(const std::string& rest) { return std::string(two_block) + rest; }

const char* anti_dia_blocks =
    "[qcategory anti]\n"
    "over = two\n"
    "objects = p q\n"
    "hom p p = 1\nhom p q = 0\nhom q p = 0\nhom q q = 1\n"
    "\n"
    "[qcategory dia]\n"
    "over = two\n"
    "objects = bot a b top\n"
    "hom bot bot = 1\nhom bot a = 1\nhom bot b = 1\nhom bot top = 1\n"
    "hom a bot = 0\nhom a a = 1\nhom a b = 0\nhom a top = 1\n"
    "hom b bot = 0\nhom b a = 0\nhom b b = 1\nhom b top = 1\n"
    "hom top bot = 0\nhom top a = 0\nhom top b = 0\nhom top top = 1\n";

}  // namespace

TEST_CASE("the shipped instance files parse and match the built-in structures") {
    SUBCASE("two") {
        auto pr = parse_instance(read_fixture("two.qk"));
        REQUIRE(pr.status() == 0);
        REQUIRE(pr.file.has_value());
        CHECK(same_one_object_quantaloid(*pr.file->quantales.at("two").q, *fx::two_q()));
    }
    SUBCASE("fin_metric") {
        auto pr = parse_instance(read_fixture("fin_metric.qk"));
        REQUIRE(pr.status() == 0);
        CHECK(same_one_object_quantaloid(*pr.file->quantales.at("fin_metric").q,
                                         *fx::fin_metric_q()));
    }
    SUBCASE("b_mono") {
        auto pr = parse_instance(read_fixture("b_mono.qk"));
        REQUIRE(pr.status() == 0);
        const auto& c = pr.file->categories.at("b_mono");
        const auto ref = fx::b_mono_category();
        CHECK(c.objects == ref.objects);
        CHECK(c.mor_names == ref.mor_names);
        CHECK(c.mor_src == ref.mor_src);
        CHECK(c.mor_dst == ref.mor_dst);
        CHECK(c.ids == ref.ids);
        CHECK(c.comp == ref.comp);
    }
    SUBCASE("comma_bmono") {
        auto pr = parse_instance(read_fixture("comma_bmono.qk"));
        REQUIRE(pr.status() == 0);
        const auto& e = pr.file->concretes.at("comma_bmono");
        const auto ref = fx::comma_bmono_qcat(fx::q_b_mono());
        CHECK(e.enc->objects == ref->objects);
        CHECK(e.enc->extent == ref->extent);
        CHECK(e.enc->hom == ref->hom);
        CHECK(e.enc->Q == e.qfree);  // the encoding shares the file's quantaloid
    }
    SUBCASE("diamond") {
        auto pr = parse_instance(read_fixture("diamond.qk"));
        REQUIRE(pr.status() == 0);
        const auto ref = fx::poset_qcat(fx::two_q(), fx::diamond_poset());
        const auto& cat = pr.file->qcategories.at("diamond").cat;
        CHECK(cat->objects == ref->objects);
        CHECK(cat->hom == ref->hom);
        CHECK(pr.file->lattices.at("diamond_l").le == fx::diamond_lattice().le);
    }
    SUBCASE("antichain2") {
        auto pr = parse_instance(read_fixture("antichain2.qk"));
        REQUIRE(pr.status() == 0);
        CHECK(pr.file->posets.at("antichain2_order").le == fx::antichain_poset(2).le);
        const auto ref = fx::poset_qcat(fx::two_q(), fx::antichain_poset(2));
        CHECK(pr.file->qcategories.at("antichain2").cat->hom == ref->hom);
    }
    SUBCASE("benzene") {
        auto pr = parse_instance(read_fixture("benzene.qk"));
        REQUIRE(pr.status() == 0);
        CHECK(pr.file->posets.at("benzene").le == fx::benzene_poset().le);
    }
}

TEST_CASE("serializing a parse of its own output is the identity") {
    const char* files[] = {"two.qk",     "fin_metric.qk", "b_mono.qk", "comma_bmono.qk",
                           "diamond.qk", "antichain2.qk", "benzene.qk"};
    for (const char* f : files) {
        CAPTURE(f);
        auto p1 = parse_instance(read_fixture(f));
        REQUIRE(p1.status() == 0);
        const std::string s1 = serialize_instance(*p1.file);
        auto p2 = parse_instance(s1);
        REQUIRE(p2.status() == 0);
        CHECK(serialize_instance(*p2.file) == s1);
    }
    SUBCASE("a file exercising every block type") {
        std::string text = with_two(anti_dia_blocks);
        text +=
            "\n[qfunctor F]\nsrc = anti\ndst = dia\nmap = a b\n"
            "\n[qdistributor D]\nsrc = anti\ndst = anti\n"
            "dist p p = 1\ndist p q = 0\ndist q p = 0\ndist q q = 1\n"
            "\n[sink S]\nover = anti\ntarget = *\nat p = 1\nat q = 0\n"
            "\n[presheaf P]\nover = anti\nextent = *\nat p = 1\nat q = 0\n";
        auto p1 = parse_instance(text);
        REQUIRE(p1.structural.empty());
        REQUIRE(p1.semantic.empty());
        CHECK(p1.file->order.size() == 7);
        const std::string s1 = serialize_instance(*p1.file);
        auto p2 = parse_instance(s1);
        REQUIRE(p2.status() == 0);
        CHECK(serialize_instance(*p2.file) == s1);
    }
}

TEST_CASE("structural problems: malformed lines and dangling references") {
    SUBCASE("entry outside any block") {
        auto pr = parse_instance("elems = a\n");
        REQUIRE(pr.status() == 2);
        CHECK(pr.structural[0].code == "ParseError");
        CHECK(contains(pr.structural[0].detail, "line 1"));
    }
    SUBCASE("unknown block type") {
        auto pr = parse_instance("[widget w]\nelems = a\n");
        CHECK(pr.status() == 2);
        CHECK(contains(pr.structural[0].detail, "unknown block type"));
    }
    SUBCASE("duplicate block name") {
        auto pr = parse_instance("[poset p]\nelems = a\nle = -\n[poset p]\nelems = b\nle = -\n");
        CHECK(pr.status() == 2);
        CHECK(contains(pr.structural[0].detail, "already exists"));
    }
    SUBCASE("forward reference") {
        std::string text = "[qcategory c]\nover = two\nobjects = x\nhom x x = 1\n" + std::string(two_block);
        auto pr = parse_instance(text);
        CHECK(pr.status() == 2);
        CHECK(pr.structural[0].code == "UnresolvedReference");
    }
    SUBCASE("unknown hom value") {
        std::string text = read_fixture("diamond.qk");
        auto pos = text.find("hom a b = 0");
        text.replace(pos, 11, "hom a b = 2");
        auto pr = parse_instance(text);
        CHECK(pr.status() == 2);
        CHECK(contains(pr.structural[0].detail, "unknown element"));
    }
    SUBCASE("missing hom entry") {
        std::string text = read_fixture("diamond.qk");
        auto pos = text.find("hom a b = 0\n");
        text.erase(pos, 12);
        auto pr = parse_instance(text);
        CHECK(pr.status() == 2);
        CHECK(contains(pr.structural[0].detail, "hom a b not given"));
    }
    SUBCASE("unknown entry key") {
        auto pr = parse_instance("[poset p]\nelems = a\nle = -\nfoo = bar\n");
        CHECK(pr.status() == 2);
        CHECK(contains(pr.structural[0].detail, "unknown entry"));
    }
    SUBCASE("a failed block suppresses cascade errors in its dependents") {
        std::string text =
            "[lattice badl]\nelems = a0 a1\nle = -\n"
            "[qcategory c]\nover = badl\nobjects = x\nhom x x = a0\n";
        auto pr = parse_instance(text);
        CHECK(pr.structural.empty());
        REQUIRE(!pr.semantic.empty());
        for (const auto& d : pr.semantic) CHECK(d.code == "NoBound");
        CHECK(pr.status() == 1);
    }
}

TEST_CASE("law violations surface as per-block findings") {
    SUBCASE("cyclic order") {
        auto pr = parse_instance("[poset cyc]\nelems = a b\nle = a<b b<a\n");
        CHECK(pr.status() == 1);
        CHECK(pr.semantic[0].code == "NotAPoset");
        CHECK(contains(pr.semantic[0].detail, "[poset cyc]"));
    }
    SUBCASE("category with a missing composite") {
        auto r = run_validate(
            "[category badc]\nobjects = *\nmors = 1:*->* e:*->* f:*->*\nids = 1\ne . e = e\n");
        CHECK(r.status == 1);
        CHECK(contains(r.text, "CompositionFailure"));
        CHECK(contains(r.text, "(MissingComposite)"));
    }
    SUBCASE("quantale with a bad unit") {
        auto pr = parse_instance(
            "[quantale badq]\nelems = 0 1\nle = 0<1\nunit = 0\n"
            "0 * 0 = 0\n0 * 1 = 0\n1 * 0 = 0\n1 * 1 = 1\n");
        CHECK(pr.status() == 1);
        CHECK(pr.semantic[0].code == "NotUnital");
    }
    SUBCASE("non-transitive enrichment") {
        auto r = run_validate(with_two(
            "[qcategory bad3]\nover = two\nobjects = x y z\n"
            "hom x x = 1\nhom x y = 1\nhom x z = 0\n"
            "hom y x = 0\nhom y y = 1\nhom y z = 1\n"
            "hom z x = 0\nhom z y = 0\nhom z z = 1\n"));
        CHECK(r.status == 1);
        CHECK(contains(r.text, "CompositionFailure"));
    }
    SUBCASE("presheaf breaking the action law") {
        auto pr = parse_instance(with_two(
            "[qcategory chain2]\nover = two\nobjects = c0 c1\n"
            "hom c0 c0 = 1\nhom c0 c1 = 1\nhom c1 c0 = 0\nhom c1 c1 = 1\n"
            "[presheaf bad]\nover = chain2\nextent = *\nat c0 = 0\nat c1 = 1\n"));
        CHECK(pr.status() == 1);
        CHECK(pr.semantic[0].code == "PresheafFailure");
    }
    SUBCASE("a healthy file validates cleanly") {
        auto r = run_validate(read_fixture("diamond.qk"));
        CHECK(r.status == 0);
        CHECK(contains(r.text, "ok: 3 blocks"));
        CHECK(contains(r.text, "---report---"));
    }
}

TEST_CASE("checking totality and topologicity from files") {
    auto dia = parse_instance(read_fixture("diamond.qk"));
    auto anti = parse_instance(read_fixture("antichain2.qk"));
    auto comma = parse_instance(read_fixture("comma_bmono.qk"));
    REQUIRE(dia.status() == 0);
    REQUIRE(anti.status() == 0);
    REQUIRE(comma.status() == 0);

    SUBCASE("complete order is total") {
        auto r = run_check(*dia.file, "diamond", "total");
        CHECK(r.status == 0);
        CHECK(contains(r.text, "total: true (6 presheaves, all suprema found)"));
    }
    SUBCASE("antichain is not total") {
        auto r = run_check(*anti.file, "antichain2", "total");
        CHECK(r.status == 1);
        CHECK(contains(r.text, "total: false; witness:"));
    }
    SUBCASE("complete order is topological") {
        auto r = run_check(*dia.file, "diamond", "topological");
        CHECK(r.status == 0);
        CHECK(contains(r.text, "topological: true"));
    }
    SUBCASE("the comma construction is not topological, by the empty sink") {
        auto r = run_check(*comma.file, "comma_bmono", "topological");
        CHECK(r.status == 1);
        CHECK(contains(r.text, "witness: the empty sink at *"));
    }
    SUBCASE("all eight characterizations agree on the antichain") {
        auto r = run_check(*anti.file, "antichain2", "all");
        CHECK(r.status == 1);
        CHECK(contains(r.text, "consistent: yes"));
        CHECK(!contains(prose(r), ": true"));  // every condition is false
    }
    SUBCASE("all eight characterizations agree on the diamond") {
        auto r = run_check(*dia.file, "diamond", "all");
        CHECK(r.status == 0);
        CHECK(contains(r.text, "consistent: yes"));
        CHECK(!contains(prose(r), ": false"));
    }
    SUBCASE("concrete targets also report the transpose comparison") {
        auto r = run_check(*comma.file, "comma_bmono", "all");
        CHECK(r.status == 1);
        CHECK(contains(r.text, "fibred: false"));
        CHECK(contains(r.text, "cofibred: true"));
        CHECK(contains(r.text, "agree: yes"));
    }
    SUBCASE("unknown target and unknown check") {
        CHECK(run_check(*dia.file, "nope", "total").status == 2);
        CHECK(run_check(*dia.file, "diamond", "bogus").status == 2);
    }
    SUBCASE("the enumeration cap stops oversized checks") {
        Caps tiny;
        tiny.max_presheaf_candidates = 10;
        auto r = run_check(*dia.file, "diamond", "total", tiny);
        CHECK(r.status == 3);
        CHECK(contains(r.text, "too large"));
    }
}

TEST_CASE("completion commands") {
    SUBCASE("cut completion of the two-point antichain") {
        auto pr = parse_instance(read_fixture("antichain2.qk"));
        REQUIRE(pr.status() == 0);
        auto r = run_complete(*pr.file, "antichain2_order", "macneille", true);
        CHECK(r.status == 0);
        CHECK(contains(r.text, "completion has 4 elements"));
        CHECK(contains(r.text, "matches cut oracle: yes"));
        auto out = parse_instance(r.output);
        REQUIRE(out.status() == 0);
        CHECK(out.file->lattices.at("antichain2_order_macneille").size() == 4);
        CHECK(contains(r.dot, "n0"));
    }
    SUBCASE("cut completion of the crown adds exactly bottom and top") {
        auto pr = parse_instance(read_fixture("benzene.qk"));
        REQUIRE(pr.status() == 0);
        auto r = run_complete(*pr.file, "benzene", "macneille", false);
        CHECK(r.status == 0);
        CHECK(contains(r.text, "completion has 8 elements"));
        CHECK(contains(r.text, "matches cut oracle: yes"));
    }
    SUBCASE("rebuilding the diamond from its irreducibles") {
        auto pr = parse_instance(read_fixture("diamond.qk"));
        REQUIRE(pr.status() == 0);
        auto r = run_complete(*pr.file, "diamond_l", "reconstruct", false);
        CHECK(r.status == 0);
        CHECK(contains(r.text, "J={a b}"));
        CHECK(contains(r.text, "M={a b}"));
        auto out = parse_instance(r.output);
        REQUIRE(out.status() == 0);
        CHECK(out.file->lattices.at("diamond_l_reconstructed").size() == 4);
    }
    SUBCASE("fixed points of the identity transform on a complete order") {
        std::string text = with_two(anti_dia_blocks);
        text +=
            "\n[qdistributor D]\nsrc = dia\ndst = dia\n"
            "dist bot bot = 1\ndist bot a = 1\ndist bot b = 1\ndist bot top = 1\n"
            "dist a bot = 0\ndist a a = 1\ndist a b = 0\ndist a top = 1\n"
            "dist b bot = 0\ndist b a = 0\ndist b b = 1\ndist b top = 1\n"
            "dist top bot = 0\ndist top a = 0\ndist top b = 0\ndist top top = 1\n";
        auto pr = parse_instance(text);
        REQUIRE(pr.status() == 0);
        auto r = run_complete(*pr.file, "D", "isbell", false);
        CHECK(r.status == 0);
        CHECK(contains(r.text, "fixed points: 4 of 6 presheaves"));
        CHECK(contains(r.text, "certificate: trivial"));
        auto out = parse_instance(r.output);
        REQUIRE(out.status() == 0);
        CHECK(out.file->qcategories.at("D_fixed").cat->size() == 4);
    }
    SUBCASE("fixed points of the identity transform on an incomplete order") {
        std::string text = with_two(anti_dia_blocks);
        text +=
            "\n[qdistributor D2]\nsrc = anti\ndst = anti\n"
            "dist p p = 1\ndist p q = 0\ndist q p = 0\ndist q q = 1\n";
        auto pr = parse_instance(text);
        REQUIRE(pr.status() == 0);
        auto r = run_complete(*pr.file, "D2", "isbell", false);
        CHECK(r.status == 0);
        CHECK(contains(r.text, "fixed points: 4 of 4 presheaves"));
        CHECK(contains(r.text, "certificate: fixed points form the completion"));
        auto out = parse_instance(r.output);
        REQUIRE(out.status() == 0);
        CHECK(out.file->qcategories.at("D2_fixed").cat->size() == 4);
    }
    SUBCASE("bad targets") {
        auto pr = parse_instance(read_fixture("antichain2.qk"));
        REQUIRE(pr.status() == 0);
        CHECK(run_complete(*pr.file, "nope", "macneille", false).status == 2);
        CHECK(run_complete(*pr.file, "antichain2_order", "reconstruct", false).status == 2);
        CHECK(run_complete(*pr.file, "antichain2_order", "bogus", false).status == 2);
    }
}

TEST_CASE("final lifts from files") {
    std::string text = read_fixture("comma_bmono.qk");
    text +=
        "\n[sink s1]\nover = comma_bmono\ntarget = *\nat 1 = {e}\nat e = -\n"
        "\n[sink s0]\nover = comma_bmono\ntarget = *\nat 1 = -\nat e = -\n";
    auto pr = parse_instance(text);
    REQUIRE(pr.status() == 0);

    SUBCASE("a liftable family reports its lifting") {
        auto r = run_final_lift(*pr.file, "s1");
        CHECK(r.status == 0);
        const auto& se = pr.file->sinks.at("s1");
        auto cls = final_lift(se.cat, se.sink);
        REQUIRE(cls.has_value());
        CHECK(contains(r.text, "lift: " + se.cat->objects[cls->rep()]));
        CHECK(contains(r.text, "normalized:"));
    }
    SUBCASE("the empty family over the comma construction has no lifting") {
        auto r = run_final_lift(*pr.file, "s0");
        CHECK(r.status == 1);
        CHECK(contains(r.text, "lift: none"));
    }
    SUBCASE("unknown sink") { CHECK(run_final_lift(*pr.file, "nope").status == 2); }
}

TEST_CASE("extending maps along fully faithful ones") {
    std::string text = with_two(anti_dia_blocks);
    text +=
        "\n[qfunctor F]\nsrc = anti\ndst = dia\nmap = a b\n"
        "\n[qfunctor G]\nsrc = anti\ndst = dia\nmap = a b\n"
        "\n[qfunctor Gbad]\nsrc = anti\ndst = dia\nmap = a a\n"
        "\n[qfunctor Fid]\nsrc = anti\ndst = anti\nmap = p q\n";
    auto pr = parse_instance(text);
    REQUIRE(pr.status() == 0);

    SUBCASE("an extension exists into a complete target") {
        auto r = run_extend(*pr.file, "F", "G");
        CHECK(r.status == 0);
        CHECK(contains(r.text, "extension found"));
        auto out = parse_instance(text + "\n" + r.output);
        REQUIRE(out.status() == 0);
        const auto& h = out.file->qfunctors.at("F_ext");
        CHECK(h.src == "dia");
        CHECK(h.dst == "dia");
        const auto& fm = pr.file->qfunctors.at("F").f.map;
        const auto& gm = pr.file->qfunctors.at("G").f.map;
        for (std::size_t i = 0; i < gm.size(); ++i) CHECK(h.f.map[gm[i]] == fm[i]);
    }
    SUBCASE("a non-fully-faithful path is refused") {
        auto r = run_extend(*pr.file, "F", "Gbad");
        CHECK(r.status == 1);
        CHECK(contains(r.text, "NotFullyFaithful"));
        CHECK(contains(r.text, "no extension"));
    }
    SUBCASE("an incomplete target is refused") {
        auto r = run_extend(*pr.file, "Fid", "G");
        CHECK(r.status == 1);
        CHECK(contains(r.text, "NotTotal"));
    }
    SUBCASE("unknown functor names") {
        CHECK(run_extend(*pr.file, "nope", "G").status == 2);
        CHECK(run_extend(*pr.file, "F", "nope").status == 2);
    }
}

TEST_CASE("drawing instance files") {
    SUBCASE("diamond as category and as lattice") {
        auto pr = parse_instance(read_fixture("diamond.qk"));
        REQUIRE(pr.status() == 0);
        for (const char* target : {"diamond", "diamond_l"}) {
            CAPTURE(target);
            auto r = run_export_dot(*pr.file, target);
            CHECK(r.status == 0);
            CHECK(contains(r.text, "nodes: 4; covering edges: 4"));
            CHECK(contains(r.dot, "n0 -- n1"));
            CHECK(contains(r.dot, "rankdir=BT"));
        }
    }
    SUBCASE("one-element order") {
        auto pr = parse_instance("[poset one]\nelems = x\nle = -\n");
        REQUIRE(pr.status() == 0);
        auto r = run_export_dot(*pr.file, "one");
        CHECK(r.status == 0);
        CHECK(contains(r.text, "nodes: 1; covering edges: 0"));
    }
    SUBCASE("metric enrichment falls back to the hom table") {
        std::string text = read_fixture("fin_metric.qk");
        text +=
            "\n[qcategory space]\nover = fin_metric\nobjects = u v\n"
            "hom u u = 0\nhom u v = 1\nhom v u = 2\nhom v v = 0\n";
        auto pr = parse_instance(text);
        REQUIRE(pr.status() == 0);
        auto r = run_export_dot(*pr.file, "space");
        CHECK(r.status == 0);
        CHECK(contains(r.text, "hom table"));
        CHECK(r.dot.empty());
        CHECK(contains(r.output, "u"));
        CHECK(contains(r.output, "2"));  // the asymmetric distance appears
    }
    SUBCASE("unknown target") {
        auto pr = parse_instance(read_fixture("benzene.qk"));
        REQUIRE(pr.status() == 0);
        CHECK(run_export_dot(*pr.file, "nope").status == 2);
    }
}
