#include <kgraph/rational.hpp>

#include <cctype>
#include <stdexcept>

namespace kgraph {

std::string to_string(const Rational& q) {
    return q.get_str();
}

Rational parse_rational(std::string_view s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    auto ok = [](const std::string& part) {
        std::size_t i = (!part.empty() && part[0] == '-') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    auto slash = t.find('/');
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!ok(num) || !ok(den) || den[0] == '-')
        throw std::invalid_argument("bad rational literal '" + std::string(s) + "'");
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

} // namespace kgraph
