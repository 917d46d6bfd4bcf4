#include "threebody/format.hpp"

#include <cmath>
#include <fstream>
#include <ios>
#include <iomanip>
#include <locale>
#include <sstream>

#include <fmt/format.h>

#include "threebody/errors.hpp"

namespace threebody {

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

std::string format_real(const HighPrec& x, int digits) {
    if (boost::multiprecision::isnan(x)) return "nan";
    if (boost::multiprecision::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(digits) << x;
    return os.str();
}

std::string format_rational(const BigRational& q) { return q.str(); }

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace threebody
