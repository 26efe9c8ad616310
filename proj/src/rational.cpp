#include "roig/rational.hpp"

#include "roig/errors.hpp"

#include <vector>

namespace roig {

double to_double(const Rat& r) { return r.convert_to<double>(); }

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator in '" + text + "'");
            return Rat(num, den);
        }
        auto dot = text.find('.');
        auto exp = text.find_first_of("eE");
        if (dot == std::string::npos && exp == std::string::npos) return Rat(BigInt(text));
        // Decimal literal: convert exactly through the double it denotes.
        return Rat(std::stod(text));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("bad rational literal '" + text + "'");
    }
}

std::string rational_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

BigInt multinomial(const std::vector<int>& counts) {
    BigInt result = 1;
    int placed = 0;
    for (int c : counts) {
        for (int i = 1; i <= c; ++i) {
            ++placed;
            result = result * placed / i;
        }
    }
    return result;
}

}  // namespace roig
