#include <sstream>

#include "qk/config.hpp"

namespace qk {

std::string render_diagnostics(const std::vector<Diagnostic>& diags) {
    std::ostringstream os;
    for (std::size_t i = 0; i < diags.size(); ++i) {
        if (i) os << "; ";
        os << diags[i].code;
        if (!diags[i].detail.empty()) os << ": " << diags[i].detail;
    }
    return os.str();
}

}  // namespace qk
