#include "qk.h"

#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "qk/io.hpp"

struct qk_engine {
    qk::Caps caps;
    std::optional<qk::InstanceFile> file;
    std::string last_error;
};

struct qk_result {
    int status = QK_OK;
    std::string text;
    std::string output;
    std::string dot;
};

namespace {

// Every boundary crossing funnels through here: C++ exceptions become
// statuses, never unwind into the caller.
template <typename Fn>
qk_result* guarded(qk_engine* e, Fn&& fn) {
    if (!e) return nullptr;
    try {
        qk::CommandResult r = fn();
        if (r.status != QK_OK) e->last_error = r.text;
        return new qk_result{r.status, std::move(r.text), std::move(r.output), std::move(r.dot)};
    } catch (const qk::TooLargeError& ex) {
        e->last_error = ex.what();
        return new qk_result{QK_TOO_LARGE, std::string("too large: ") + ex.what(), {}, {}};
    } catch (const qk::InputError& ex) {
        e->last_error = ex.what();
        return new qk_result{QK_INPUT_ERROR, std::string("error: ") + ex.what(), {}, {}};
    } catch (const std::exception& ex) {
        e->last_error = ex.what();
        return new qk_result{QK_INTERNAL_ERROR, std::string("internal error: ") + ex.what(),
                             {}, {}};
    }
}

const qk::InstanceFile* need_file(qk_engine* e) {
    return e->file ? &*e->file : nullptr;
}

qk_result* no_instance(qk_engine* e) {
    e->last_error = "no instance loaded";
    return new qk_result{QK_INPUT_ERROR, "error: no instance loaded", {}, {}};
}

}  // namespace

extern "C" {

const char* qk_version(void) { return "0.1.0"; }

qk_engine* qk_engine_new(void) { return new (std::nothrow) qk_engine(); }

void qk_engine_free(qk_engine* e) { delete e; }

qk_status qk_engine_set_option(qk_engine* e, const char* key, long long value) {
    if (!e || !key) return QK_BAD_HANDLE;
    const std::string k = key;
    if (k == "max_presheaves") {
        if (value <= 0) return QK_INPUT_ERROR;
        e->caps.max_presheaf_candidates = value;
    } else if (k == "probe_bound") {
        if (value < 0 || value > 64) return QK_INPUT_ERROR;
        e->caps.probe_bound = static_cast<int>(value);
    } else if (k == "seed") {
        e->caps.seed = static_cast<std::uint64_t>(value);
    } else if (k == "max_free_hom") {
        if (value <= 0 || value > 32) return QK_INPUT_ERROR;
        e->caps.max_free_hom = static_cast<int>(value);
    } else {
        e->last_error = "unknown option '" + k + "'";
        return QK_INPUT_ERROR;
    }
    return QK_OK;
}

qk_status qk_engine_load_string(qk_engine* e, const char* text) {
    if (!e || !text) return QK_BAD_HANDLE;
    try {
        qk::ParseResult pr = qk::parse_instance(text, e->caps);
        if (pr.file) {
            e->file = std::move(pr.file);
            e->last_error.clear();
            return QK_OK;
        }
        std::ostringstream o;
        for (const auto& d : pr.structural) o << d.code << ": " << d.detail << '\n';
        for (const auto& d : pr.semantic) o << d.code << ": " << d.detail << '\n';
        e->last_error = o.str();
        return static_cast<qk_status>(pr.status());
    } catch (const qk::TooLargeError& ex) {
        e->last_error = ex.what();
        return QK_TOO_LARGE;
    } catch (const std::exception& ex) {
        e->last_error = ex.what();
        return QK_INTERNAL_ERROR;
    }
}

qk_status qk_engine_load_file(qk_engine* e, const char* path) {
    if (!e || !path) return QK_BAD_HANDLE;
    std::ifstream in(path);
    if (!in.good()) {
        e->last_error = std::string("cannot read '") + path + "'";
        return QK_INPUT_ERROR;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    return qk_engine_load_string(e, text.c_str());
}

const char* qk_last_error(const qk_engine* e) { return e ? e->last_error.c_str() : ""; }

qk_result* qk_cmd_validate(qk_engine* e, const char* text) {
    if (!e || !text) return nullptr;
    return guarded(e, [&] { return qk::run_validate(text, e->caps); });
}

qk_result* qk_cmd_check(qk_engine* e, const char* target, const char* which) {
    if (!e || !target || !which) return nullptr;
    const qk::InstanceFile* f = need_file(e);
    if (!f) return no_instance(e);
    return guarded(e, [&] { return qk::run_check(*f, target, which, e->caps); });
}

qk_result* qk_cmd_complete(qk_engine* e, const char* target, const char* mode, int with_dot) {
    if (!e || !target || !mode) return nullptr;
    const qk::InstanceFile* f = need_file(e);
    if (!f) return no_instance(e);
    return guarded(e, [&] { return qk::run_complete(*f, target, mode, with_dot != 0, e->caps); });
}

qk_result* qk_cmd_final_lift(qk_engine* e, const char* sink) {
    if (!e || !sink) return nullptr;
    const qk::InstanceFile* f = need_file(e);
    if (!f) return no_instance(e);
    return guarded(e, [&] { return qk::run_final_lift(*f, sink, e->caps); });
}

qk_result* qk_cmd_extend(qk_engine* e, const char* functor, const char* along) {
    if (!e || !functor || !along) return nullptr;
    const qk::InstanceFile* f = need_file(e);
    if (!f) return no_instance(e);
    return guarded(e, [&] { return qk::run_extend(*f, functor, along, e->caps); });
}

qk_result* qk_cmd_export_dot(qk_engine* e, const char* target) {
    if (!e || !target) return nullptr;
    const qk::InstanceFile* f = need_file(e);
    if (!f) return no_instance(e);
    return guarded(e, [&] { return qk::run_export_dot(*f, target); });
}

qk_status qk_result_status(const qk_result* r) {
    return r ? static_cast<qk_status>(r->status) : QK_BAD_HANDLE;
}

const char* qk_result_text(const qk_result* r) { return r ? r->text.c_str() : ""; }

const char* qk_result_output(const qk_result* r) { return r ? r->output.c_str() : ""; }

const char* qk_result_dot(const qk_result* r) { return r ? r->dot.c_str() : ""; }

void qk_result_free(qk_result* r) { delete r; }

}  // extern "C"
