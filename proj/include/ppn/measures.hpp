#pragma once

#include "ppn/conditionals.hpp"
#include "ppn/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ppn {

// A finite event space with several basic measures (value, mass, count, ...)
// over its elementary events.  The measure of a set of elements is the sum
// of its members' values, so additivity holds by construction.  Numerical
// columns that do not behave like measures can be stored but are flagged and
// rejected by the probability operations.
class MeasureTable {
  public:
    void add_element(const std::string& name);
    // values must cover every element; all values nonnegative unless the
    // column is flagged non-measure.
    void add_measure(const std::string& name, const std::string& unit,
                     const std::map<std::string, Rational>& values, bool is_measure = true);

    const std::vector<std::string>& elements() const { return elements_; }
    bool has_measure(const std::string& name) const;
    bool is_measure(const std::string& name) const;
    const std::string& unit(const std::string& name) const;
    std::vector<std::string> measure_names() const;  // sorted
    const Rational& value(const std::string& measure, const std::string& element) const;

    // Sum of the measure over the member elements.
    Rational measure_of(const std::string& measure, const std::set<std::string>& event) const;

  private:
    struct Column {
        std::string unit;
        std::map<std::string, Rational> values;
        bool is_measure = true;
    };
    std::vector<std::string> elements_;
    std::set<std::string> element_set_;
    std::map<std::string, Column> measures_;
};

// mu(event) / mu(given) under the named measure; `indefinite` (nullopt) when
// mu(given) = 0.  Omitting `given` conditions on the whole space.
std::optional<Rational> measure_probability(const MeasureTable& t, const std::string& measure,
                                            const std::set<std::string>& event,
                                            const std::optional<std::set<std::string>>& given =
                                                std::nullopt);

// Material conditional over element sets: mu(antecedent and consequent)
// equals k times mu(antecedent), exactly.
bool conditional_by_measure(const MeasureTable& t, const std::string& measure,
                            const std::set<std::string>& antecedent,
                            const std::set<std::string>& consequent, const Rational& k);

}  // namespace ppn
