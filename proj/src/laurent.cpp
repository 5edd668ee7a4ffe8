#include <quadalg/laurent.hpp>

#include <sstream>

namespace quadalg {

std::string LaurentScalar::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : coef_) {
        std::string cs = quadalg::to_string(c);
        if (!first) out << " + ";
        first = false;
        if (e == 0) {
            out << cs;
            continue;
        }
        bool simple = cs.find('+') == std::string::npos &&
                      cs.find('-', 1) == std::string::npos;
        if (cs == "1")
            ;
        else if (simple)
            out << cs << "*";
        else
            out << "(" << cs << ")*";
        out << "eps";
        if (e != 1) out << "^" << e;
    }
    return out.str();
}

} // namespace quadalg
