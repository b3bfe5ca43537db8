#include "thumbtack/serialize.hpp"

namespace thumbtack::json {

json number(const BigInt& x) { return to_string(x); }
json number(const BigRational& x) { return to_string(x); }
json number(std::int64_t x) { return std::to_string(x); }

json numbers(const std::vector<BigInt>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(number(x));
    return out;
}

json vector(const IntVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(number(x));
    return out;
}

json matrix(const IntMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector(IntVector(m.row(i).transpose())));
    return out;
}

json matrix(const SmallMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
        out.push_back(row);
    }
    return out;
}

json poly(const RationalPoly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_fraction_string(c));
    return out;
}

json element(const CycElement& x) {
    json coeffs = json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(to_fraction_string(c));
    return {{"conductor", number(static_cast<std::int64_t>(x.field()->conductor()))}, {"coeffs", coeffs}};
}

json poly(const CycPoly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(element(c));
    return out;
}

json factored(const FactoredRational& a) { return a.to_string(); }

json gamma(const MultSubgroup& g) {
    json out = json::array();
    for (const auto& a : g.generators()) out.push_back(factored(a));
    return out;
}

json function_field(const FunctionFieldElement& f) {
    json factors = json::array();
    for (const auto& [p, e] : f.factors) factors.push_back({label_string(p), number(e)});
    return {{"constant", number(f.constant)}, {"factors", factors}};
}

json subgroup(const ModSubgroup& s) {
    return {{"modulus", number(s.modulus())}, {"divisors", numbers(s.divisors())}, {"generators", matrix(s.generators())}};
}

json group(const FiniteGroup& g) {
    json table = json::array();
    for (const auto& row : g.cayley()) {
        json r = json::array();
        for (int x : row) r.push_back(number(static_cast<std::int64_t>(x)));
        table.push_back(r);
    }
    return {{"order", number(static_cast<std::int64_t>(g.order()))}, {"cayley", table}};
}

json module(const FiniteModule& m) {
    json orders = json::array();
    for (auto d : m.orders()) orders.push_back(number(d));
    json action = json::object();
    for (std::size_t g = 0; g < m.action().size(); ++g) action[std::to_string(g)] = matrix(m.action()[g]);
    return {{"orders", orders}, {"action", action}};
}

json cochain(const Cochain& f) {
    json out = json::array();
    for (const auto& x : f.values) {
        json v = json::array();
        for (auto c : x) v.push_back(number(c));
        out.push_back(v);
    }
    return out;
}

}  // namespace thumbtack::json
