#ifndef WMMS_TESTS_HELPERS_HPP
#define WMMS_TESTS_HELPERS_HPP

#include <string>
#include <vector>

#include "wmms/instance.hpp"

namespace wmms::test {

inline Rational R(long num, long den = 1) { return Rational(num, den); }
inline Rational R(std::string_view text) { return Rational::parse(text); }

/// Compact instance builder; weights and costs given as rational strings.
inline Instance make_instance(const std::vector<std::pair<std::string, std::string>>& agents,
                              const std::vector<std::string>& items,
                              const std::vector<std::vector<std::string>>& costs) {
    Instance inst;
    for (const auto& [id, w] : agents) {
        inst.agents.push_back(id);
        inst.weights.push_back(Rational::parse(w));
    }
    inst.items = items;
    for (const auto& row : costs) {
        std::vector<Rational> values;
        for (const auto& v : row) values.push_back(Rational::parse(v));
        inst.costs.push_back(std::move(values));
    }
    return inst;
}

/// The running two-agent example: weights (1-eps, eps), both items cost 1/2.
inline Instance two_agent_example(const Rational& eps) {
    Instance inst;
    inst.agents = {"a1", "a2"};
    inst.weights = {Rational(1) - eps, eps};
    inst.items = {"e1", "e2"};
    inst.costs = {{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}};
    return inst;
}

}  // namespace wmms::test

#endif
