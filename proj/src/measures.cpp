#include "ppn/measures.hpp"

#include <algorithm>

namespace ppn {

void MeasureTable::add_element(const std::string& name) {
    if (!element_set_.insert(name).second) throw Error("duplicate element: " + name);
    elements_.push_back(name);
}

void MeasureTable::add_measure(const std::string& name, const std::string& unit,
                               const std::map<std::string, Rational>& values, bool is_measure) {
    if (measures_.count(name)) throw Error("duplicate measure: " + name);
    for (const auto& e : elements_)
        if (!values.count(e)) throw Error("measure " + name + " missing element " + e);
    for (const auto& [e, v] : values) {
        if (!element_set_.count(e)) throw Error("measure " + name + " names unknown element " + e);
        if (is_measure && v < 0) throw Error("measure " + name + " has a negative value for " + e);
    }
    measures_[name] = Column{unit, values, is_measure};
}

bool MeasureTable::has_measure(const std::string& name) const { return measures_.count(name) > 0; }

bool MeasureTable::is_measure(const std::string& name) const {
    auto it = measures_.find(name);
    if (it == measures_.end()) throw Error("unknown measure: " + name);
    return it->second.is_measure;
}

const std::string& MeasureTable::unit(const std::string& name) const {
    auto it = measures_.find(name);
    if (it == measures_.end()) throw Error("unknown measure: " + name);
    return it->second.unit;
}

std::vector<std::string> MeasureTable::measure_names() const {
    std::vector<std::string> out;
    for (const auto& [name, c] : measures_) out.push_back(name);
    return out;
}

const Rational& MeasureTable::value(const std::string& measure, const std::string& element) const {
    auto it = measures_.find(measure);
    if (it == measures_.end()) throw Error("unknown measure: " + measure);
    auto v = it->second.values.find(element);
    if (v == it->second.values.end()) throw Error("unknown element: " + element);
    return v->second;
}

Rational MeasureTable::measure_of(const std::string& measure,
                                  const std::set<std::string>& event) const {
    auto it = measures_.find(measure);
    if (it == measures_.end()) throw Error("unknown measure: " + measure);
    if (!it->second.is_measure)
        throw Error("column " + measure + " is not additive and cannot be used as a measure");
    Rational sum = 0;
    for (const auto& e : event) {
        if (!element_set_.count(e)) throw Error("unknown element: " + e);
        sum += it->second.values.at(e);
    }
    return sum;
}

std::optional<Rational> measure_probability(const MeasureTable& t, const std::string& measure,
                                            const std::set<std::string>& event,
                                            const std::optional<std::set<std::string>>& given) {
    std::set<std::string> cond;
    if (given) {
        cond = *given;
    } else {
        cond.insert(t.elements().begin(), t.elements().end());
    }
    for (const auto& e : event)
        if (!cond.count(e)) throw Error("event element " + e + " lies outside the condition");
    Rational den = t.measure_of(measure, cond);
    if (den == 0) return std::nullopt;
    return t.measure_of(measure, event) / den;
}

bool conditional_by_measure(const MeasureTable& t, const std::string& measure,
                            const std::set<std::string>& antecedent,
                            const std::set<std::string>& consequent, const Rational& k) {
    std::set<std::string> both;
    std::set_intersection(antecedent.begin(), antecedent.end(), consequent.begin(),
                          consequent.end(), std::inserter(both, both.begin()));
    return t.measure_of(measure, both) == k * t.measure_of(measure, antecedent);
}

}  // namespace ppn
