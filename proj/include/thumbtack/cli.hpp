#ifndef THUMBTACK_CLI_HPP
#define THUMBTACK_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "thumbtack/multgroup.hpp"

namespace thumbtack {

/// Comma-separated rationals, each optionally written as a signed product
/// of powers ("2", "-8/9", "+2^3*3^-2"). Zero is rejected with its position;
/// torsion generators (+-1) are accepted and reported through warnings.
MultSubgroup parse_gamma(std::string_view spec, std::vector<std::string>* warnings = nullptr);

/// Comma-separated function-field expressions in t ("t,t+1").
std::vector<FunctionFieldElement> parse_gamma_geometric(std::string_view spec);

/// "a..b" or "p,q,r".
std::vector<std::uint64_t> parse_primes(std::string_view spec);

/// Runs one command (arguments without the program name). JSON report on
/// out, human summary on err. Exit codes: 0 computed and verified, 1 usage,
/// 2 size limit, 3 verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thumbtack

#endif  // THUMBTACK_CLI_HPP
