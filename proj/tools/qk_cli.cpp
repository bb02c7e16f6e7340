// Command-line front end. Talks to the engine exclusively through the
// stable C surface in qk.h; prints the text report to stdout and routes
// secondary artifacts (emitted instance files, DOT graphs) to --out/--dot
// or stdout. Exit code: 0 success, 1 property found false, 2 bad input,
// 3 enumeration cap exceeded, 4 internal failure.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
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

int to_exit(qk_status s) { return s <= QK_TOO_LARGE ? static_cast<int>(s) : 4; }

bool write_file(const std::string& path, const char* content) {
    std::ofstream out(path);
    if (!out.good()) return false;
    out << content;
    return out.good();
}

// Emit an artifact to the given path, or to stdout when no path was set.
int emit(const std::string& path, const char* content, const char* what) {
    if (!*content) return 0;
    if (path.empty()) {
        std::cout << content;
        return 0;
    }
    if (!write_file(path, content)) {
        std::cerr << "cannot write " << what << " to '" << path << "'\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite engine for categories enriched in a quantaloid"};
    app.set_version_flag("--version", qk_version());
    app.require_subcommand(1);

    long long max_presheaves = 0;
    long long seed = -1;
    int probe_bound = -1;
    int max_free_hom = 0;
    app.add_option("--max-presheaves", max_presheaves,
                   "cap on enumeration size before refusing (exit 3)");
    app.add_option("--probe-bound", probe_bound, "probe size for initial-source verification");
    app.add_option("--seed", seed, "seed for randomized sweeps");
    app.add_option("--max-free-hom", max_free_hom,
                   "largest base hom-set a powerset construction accepts");

    std::string file, target, which = "all", mode = "macneille";
    std::string sink_name, functor_name, along_name, out_path, dot_path;

    auto* validate = app.add_subcommand("validate", "parse a file and report every violation");
    validate->add_option("file", file, "instance file")->required();

    auto* check = app.add_subcommand("check", "decide totality / topologicity for a block");
    check->add_option("file", file, "instance file")->required();
    check->add_option("target", target, "qcategory or concrete block")->required();
    check->add_option("--which", which, "total, topological, or all (default all)");

    auto* complete = app.add_subcommand("complete", "compute a completion as a new block");
    complete->add_option("file", file, "instance file")->required();
    complete->add_option("target", target, "poset/lattice/qdistributor block")->required();
    complete->add_option("--mode", mode, "macneille, reconstruct, or isbell");
    complete->add_option("--out", out_path, "write the emitted instance file here");
    complete->add_option("--dot", dot_path, "also write a Hasse diagram here");

    auto* final_lift = app.add_subcommand("final-lift", "lift a structured family of maps");
    final_lift->add_option("file", file, "instance file")->required();
    final_lift->add_option("sink", sink_name, "sink block")->required();

    auto* extend = app.add_subcommand("extend", "extend a map along a fully faithful one");
    extend->add_option("file", file, "instance file")->required();
    extend->add_option("functor", functor_name, "qfunctor block to extend")->required();
    extend->add_option("along", along_name, "fully faithful qfunctor block")->required();
    extend->add_option("--out", out_path, "write the extension block here");

    auto* export_dot = app.add_subcommand("export-dot", "draw a block as a Hasse diagram");
    export_dot->add_option("file", file, "instance file")->required();
    export_dot->add_option("target", target, "poset/lattice/qcategory block")->required();
    export_dot->add_option("--out", out_path, "write the DOT graph here");

    for (auto* sub : {validate, check, complete, final_lift, extend, export_dot})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    Engine eng(qk_engine_new());
    if (!eng) {
        std::cerr << "engine allocation failed\n";
        return 4;
    }
    if (max_presheaves > 0 &&
        qk_engine_set_option(eng.get(), "max_presheaves", max_presheaves) != QK_OK) {
        std::cerr << "bad --max-presheaves value\n";
        return 2;
    }
    if (probe_bound >= 0 &&
        qk_engine_set_option(eng.get(), "probe_bound", probe_bound) != QK_OK) {
        std::cerr << "bad --probe-bound value\n";
        return 2;
    }
    if (seed >= 0) qk_engine_set_option(eng.get(), "seed", seed);
    if (max_free_hom > 0 &&
        qk_engine_set_option(eng.get(), "max_free_hom", max_free_hom) != QK_OK) {
        std::cerr << "bad --max-free-hom value\n";
        return 2;
    }

    Result r;
    if (validate->parsed()) {
        std::ifstream in(file);
        if (!in.good()) {
            std::cerr << "cannot read '" << file << "'\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string text = ss.str();
        r.reset(qk_cmd_validate(eng.get(), text.c_str()));
    } else {
        const qk_status loaded = qk_engine_load_file(eng.get(), file.c_str());
        if (loaded != QK_OK) {
            std::cerr << qk_last_error(eng.get()) << '\n';
            return to_exit(loaded);
        }
        if (check->parsed()) {
            r.reset(qk_cmd_check(eng.get(), target.c_str(), which.c_str()));
        } else if (complete->parsed()) {
            r.reset(qk_cmd_complete(eng.get(), target.c_str(), mode.c_str(),
                                    dot_path.empty() ? 0 : 1));
        } else if (final_lift->parsed()) {
            r.reset(qk_cmd_final_lift(eng.get(), sink_name.c_str()));
        } else if (extend->parsed()) {
            r.reset(qk_cmd_extend(eng.get(), functor_name.c_str(), along_name.c_str()));
        } else if (export_dot->parsed()) {
            r.reset(qk_cmd_export_dot(eng.get(), target.c_str()));
        }
    }
    if (!r) {
        std::cerr << "command dispatch failed\n";
        return 4;
    }

    std::cout << qk_result_text(r.get());
    if (complete->parsed() || extend->parsed()) {
        if (int rc = emit(out_path, qk_result_output(r.get()), "instance file")) return rc;
        if (!dot_path.empty())
            if (int rc = emit(dot_path, qk_result_dot(r.get()), "DOT graph")) return rc;
    } else if (export_dot->parsed()) {
        const char* art = *qk_result_dot(r.get()) ? qk_result_dot(r.get())
                                                  : qk_result_output(r.get());
        if (int rc = emit(out_path, art, "DOT graph")) return rc;
    }
    return to_exit(qk_result_status(r.get()));
}
