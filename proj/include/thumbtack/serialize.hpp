#ifndef THUMBTACK_SERIALIZE_HPP
#define THUMBTACK_SERIALIZE_HPP

// JSON forms of the engine's values. Every number is written as a string.

#include "json.hpp"

#include "thumbtack/cohomology.hpp"
#include "thumbtack/factorization.hpp"
#include "thumbtack/kummer.hpp"
#include "thumbtack/multgroup.hpp"

namespace thumbtack::json {

using nlohmann::json;

json number(const BigInt& x);
json number(const BigRational& x);
json number(std::int64_t x);
json numbers(const std::vector<BigInt>& xs);

json vector(const IntVector& v);
json matrix(const IntMatrix& m);
json matrix(const SmallMatrix& m);

/// Coefficient strings "num/den", lowest degree first.
json poly(const RationalPoly& p);
json element(const CycElement& x);
json poly(const CycPoly& p);

json factored(const FactoredRational& a);
json gamma(const MultSubgroup& g);
json function_field(const FunctionFieldElement& f);
json subgroup(const ModSubgroup& s);
json group(const FiniteGroup& g);
json module(const FiniteModule& m);
json cochain(const Cochain& f);

}  // namespace thumbtack::json

#endif  // THUMBTACK_SERIALIZE_HPP
