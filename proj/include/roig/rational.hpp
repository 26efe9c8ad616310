#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace roig {

// Exact rational arithmetic for risks, distribution weights and bound
// comparisons. Every asserted inequality in the test suites is an exact
// inequality; float drift would make them flaky.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

double to_double(const Rat& r);

// Accepts "p/q", "p", or a decimal literal (converted exactly).
Rat parse_rational(const std::string& text);

std::string rational_string(const Rat& r);

// n! / (c_1! ... c_k!) with sum(c) = n.
BigInt multinomial(const std::vector<int>& counts);

}  // namespace roig
