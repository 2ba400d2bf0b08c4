#pragma once

#include "ppn/deduction.hpp"
#include "ppn/measures.hpp"

#include "json.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ppn {

struct LoadError : Error {
    using Error::Error;
};

struct QueryError : Error {
    using Error::Error;
};

// One query from a model file, executed in declaration order.
struct Query {
    enum class Kind { Prob, Set, Status, Deduce, Measure };
    Kind kind = Kind::Prob;
    std::string raw;  // source text, echoed in reports

    // Prob: P(target) or the unsimplified quotient P(target | cond).
    EventConjunction target;
    EventConjunction cond;
    bool conditional = false;

    // Set: feasible values of `objective` (a probability expression) under
    // the model's assertions plus `given`.  Status: modal status of the named
    // conditional, same gamma.
    Polynomial objective;
    ConstraintSet given;
    std::string cond_id;

    // Deduce: paraconsistent propositional consequence.
    std::vector<FormulaPtr> premises;
    FormulaPtr conclusion;

    // Measure: mu-induced probability of an element set, optionally
    // conditioned on another.
    std::string measure;
    std::set<std::string> m_event;
    std::optional<std::set<std::string>> m_given;
};

struct ModelFile {
    Network net;
    ConstraintSet assertions;
    std::vector<std::pair<std::string, ConditionalStatement>> conditionals;  // (id, statement)
    std::vector<Query> queries;
    std::optional<MeasureTable> measures;
};

// Parses the line-oriented model syntax ('#' comments).  Errors carry line
// numbers.
ModelFile parse_model(const std::string& text);
ModelFile load_model(const std::string& path);

// Writes a model back out in the same syntax; parse_model(render_model(m))
// yields a model whose rendering is identical (round trip).
std::string render_model(const ModelFile& model);

struct RunOptions {
    Rational epsilon = Rational(1, 1000);
    std::string format = "text";  // "text" or "json"
    bool oracle_check = false;
    int grid = 200;
    bool dump_programs = false;
};

struct Report {
    std::string text;
    nlohmann::json json;
    int errors = 0;      // failed queries
    int mismatches = 0;  // corpus verdicts differing from the expected results
};

// Executes all queries in order; a query error is recorded and execution
// continues.
Report run_model(const ModelFile& model, const RunOptions& options);

// Built-in example corpus with embedded expected results.
std::vector<std::string> corpus_names();
Report run_corpus(const std::string& name, const RunOptions& options);  // name or "all"

// Every optimization program the full corpus generates (for sampling-oracle
// cross checks).
std::vector<PolyProgram> corpus_programs();

}  // namespace ppn
