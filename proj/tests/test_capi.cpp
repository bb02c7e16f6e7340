#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "qk.h"

namespace {

struct EngineDel {
    void operator()(qk_engine* e) const { qk_engine_free(e); }
};
struct ResultDel {
    void operator()(qk_result* r) const { qk_result_free(r); }
};
using Engine = std::unique_ptr<qk_engine, EngineDel>;
using Result = std::unique_ptr<qk_result, ResultDel>;

std::string fixture_path(const char* name) { return std::string(QK_FIXTURE_DIR) + "/" + name; }

std::string read_fixture(const char* name) {
    std::ifstream in(fixture_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool contains(const char* hay, const std::string& needle) {
    return std::string(hay).find(needle) != std::string::npos;
}

const char* anti_dia_functors =
    "[quantale two]\n"
    "elems = 0 1\nle = 0<1\nunit = 1\n"
    "0 * 0 = 0\n0 * 1 = 0\n1 * 0 = 0\n1 * 1 = 1\n"
    "[qcategory anti]\nover = two\nobjects = p q\n"
    "hom p p = 1\nhom p q = 0\nhom q p = 0\nhom q q = 1\n"
    "[qcategory dia]\nover = two\nobjects = bot a b top\n"
    "hom bot bot = 1\nhom bot a = 1\nhom bot b = 1\nhom bot top = 1\n"
    "hom a bot = 0\nhom a a = 1\nhom a b = 0\nhom a top = 1\n"
    "hom b bot = 0\nhom b a = 0\nhom b b = 1\nhom b top = 1\n"
    "hom top bot = 0\nhom top a = 0\nhom top b = 0\nhom top top = 1\n"
    "[qfunctor F]\nsrc = anti\ndst = dia\nmap = a b\n"
    "[qfunctor G]\nsrc = anti\ndst = dia\nmap = a b\n";

}  // namespace

TEST_CASE("version and lifecycle") {
    CHECK(qk_version() != nullptr);
    CHECK(std::string(qk_version()).find('.') != std::string::npos);
    Engine e(qk_engine_new());
    REQUIRE(e);
    CHECK(std::string(qk_last_error(e.get())).empty());
}

TEST_CASE("loading files and strings maps diagnostics to statuses") {
    Engine e(qk_engine_new());
    SUBCASE("a healthy file loads") {
        CHECK(qk_engine_load_file(e.get(), fixture_path("diamond.qk").c_str()) == QK_OK);
    }
    SUBCASE("a missing file is an input error") {
        CHECK(qk_engine_load_file(e.get(), "/nonexistent/x.qk") == QK_INPUT_ERROR);
        CHECK(contains(qk_last_error(e.get()), "cannot read"));
    }
    SUBCASE("a law violation is property-false") {
        const char* bad =
            "[quantale badq]\nelems = 0 1\nle = 0<1\nunit = 0\n"
            "0 * 0 = 0\n0 * 1 = 0\n1 * 0 = 0\n1 * 1 = 1\n";
        CHECK(qk_engine_load_string(e.get(), bad) == QK_PROPERTY_FALSE);
        CHECK(contains(qk_last_error(e.get()), "NotUnital"));
    }
    SUBCASE("a dangling reference is an input error") {
        const char* bad = "[qcategory c]\nover = nowhere\nobjects = x\nhom x x = 1\n";
        CHECK(qk_engine_load_string(e.get(), bad) == QK_INPUT_ERROR);
        CHECK(contains(qk_last_error(e.get()), "UnresolvedReference"));
    }
    SUBCASE("a failed load keeps the previous instance") {
        REQUIRE(qk_engine_load_file(e.get(), fixture_path("diamond.qk").c_str()) == QK_OK);
        CHECK(qk_engine_load_string(e.get(), "[widget w]\n") == QK_INPUT_ERROR);
        Result r(qk_cmd_check(e.get(), "diamond", "total"));
        CHECK(qk_result_status(r.get()) == QK_OK);
    }
    SUBCASE("commands before any load are input errors") {
        Result r(qk_cmd_check(e.get(), "diamond", "total"));
        CHECK(qk_result_status(r.get()) == QK_INPUT_ERROR);
        CHECK(contains(qk_result_text(r.get()), "no instance loaded"));
    }
}

TEST_CASE("checking through the C surface") {
    Engine e(qk_engine_new());
    REQUIRE(qk_engine_load_file(e.get(), fixture_path("diamond.qk").c_str()) == QK_OK);
    SUBCASE("totality") {
        Result r(qk_cmd_check(e.get(), "diamond", "total"));
        CHECK(qk_result_status(r.get()) == QK_OK);
        CHECK(contains(qk_result_text(r.get()), "total: true (6 presheaves"));
    }
    SUBCASE("unknown blocks are input errors") {
        Result r(qk_cmd_check(e.get(), "nope", "total"));
        CHECK(qk_result_status(r.get()) == QK_INPUT_ERROR);
    }
    SUBCASE("budget options cause cap refusals") {
        CHECK(qk_engine_set_option(e.get(), "max_presheaves", 5) == QK_OK);
        Result r(qk_cmd_check(e.get(), "diamond", "total"));
        CHECK(qk_result_status(r.get()) == QK_TOO_LARGE);
        CHECK(contains(qk_result_text(r.get()), "too large"));
    }
    SUBCASE("bad option keys and values") {
        CHECK(qk_engine_set_option(e.get(), "bogus", 1) == QK_INPUT_ERROR);
        CHECK(qk_engine_set_option(e.get(), "max_presheaves", -3) == QK_INPUT_ERROR);
        CHECK(qk_engine_set_option(e.get(), "seed", 42) == QK_OK);
    }
}

TEST_CASE("completion, lifting, extension, drawing through the C surface") {
    Engine e(qk_engine_new());
    SUBCASE("cut completion emits a lattice block and a diagram") {
        REQUIRE(qk_engine_load_file(e.get(), fixture_path("antichain2.qk").c_str()) == QK_OK);
        Result r(qk_cmd_complete(e.get(), "antichain2_order", "macneille", 1));
        CHECK(qk_result_status(r.get()) == QK_OK);
        CHECK(contains(qk_result_output(r.get()), "[lattice antichain2_order_macneille]"));
        CHECK(contains(qk_result_dot(r.get()), "graph"));
    }
    SUBCASE("drawing the diamond") {
        REQUIRE(qk_engine_load_file(e.get(), fixture_path("diamond.qk").c_str()) == QK_OK);
        Result r(qk_cmd_export_dot(e.get(), "diamond"));
        CHECK(qk_result_status(r.get()) == QK_OK);
        CHECK(contains(qk_result_dot(r.get()), "n0 -- n1"));
    }
    SUBCASE("final lift of a one-map family") {
        std::string text = read_fixture("comma_bmono.qk") +
                           "\n[sink s1]\nover = comma_bmono\ntarget = *\nat 1 = {e}\nat e = -\n";
        REQUIRE(qk_engine_load_string(e.get(), text.c_str()) == QK_OK);
        Result r(qk_cmd_final_lift(e.get(), "s1"));
        CHECK(qk_result_status(r.get()) == QK_OK);
        CHECK(contains(qk_result_text(r.get()), "lift: "));
    }
    SUBCASE("extension along a fully faithful map") {
        REQUIRE(qk_engine_load_string(e.get(), anti_dia_functors) == QK_OK);
        Result r(qk_cmd_extend(e.get(), "F", "G"));
        CHECK(qk_result_status(r.get()) == QK_OK);
        CHECK(contains(qk_result_output(r.get()), "[qfunctor F_ext]"));
    }
}

TEST_CASE("null handles are inert") {
    CHECK(qk_result_status(nullptr) == QK_BAD_HANDLE);
    CHECK(std::string(qk_result_text(nullptr)).empty());
    CHECK(std::string(qk_result_output(nullptr)).empty());
    CHECK(std::string(qk_result_dot(nullptr)).empty());
    CHECK(std::string(qk_last_error(nullptr)).empty());
    CHECK(qk_cmd_check(nullptr, "x", "total") == nullptr);
    CHECK(qk_engine_set_option(nullptr, "seed", 1) == QK_BAD_HANDLE);
    Engine e(qk_engine_new());
    CHECK(qk_cmd_check(e.get(), nullptr, "total") == nullptr);
    qk_result_free(nullptr);
    qk_engine_free(nullptr);
}
