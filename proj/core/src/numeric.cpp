#include "recforge/numeric.hpp"

#include <cctype>

namespace recforge {

std::optional<Rat> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto strip_plus = [](std::string t) {
        if (!t.empty() && t[0] == '+') t.erase(0, 1);  // cpp_int rejects '+'
        return t;
    };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(s)) return std::nullopt;
            return Rat(Int(strip_plus(s)));
        }
        std::string p = strip_plus(s.substr(0, slash)),
                    q = strip_plus(s.substr(slash + 1));
        if (!is_int(p) || !is_int(q)) return std::nullopt;
        Int qi(q);
        if (qi == 0) return std::nullopt;
        return Rat(Int(p), qi);
    } catch (...) {
        return std::nullopt;
    }
}

Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

}  // namespace recforge
