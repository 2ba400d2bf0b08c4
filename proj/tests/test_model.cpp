#include "doctest.h"

#include "ppn/model.hpp"

using namespace ppn;

namespace {

const char* kChainModel = R"(
# two-variable chain
var A
var B
param x in [0,1]
param y in [0,1]
param z in [0,1]
table P0(A) { T: x ; F: 1-x }
table P0(B|A) { T|T: y ; F|T: 1-y ; T|F: z ; F|F: 1-z }
embed AimpB = "A -> B"
cond su k=1 : A => B
query P(B=T)
query P(B=T|A=T)
query P(AimpB=T)
query set P(B=T) given { P(A=T)=1 ; P0(B=T|A=T)=1 }
query status c1 given { P(A=T)=1 ; P(B=T)=0 }
query deduce { "X" ; "X -> Y" } |- "Y"
)";

std::string result_of(const Report& r, std::size_t i, const char* field) {
    return r.json.at("queries").at(i).at(field).get<std::string>();
}

}  // namespace

TEST_CASE("model file: the two-variable chain end to end") {
    ModelFile m = parse_model(kChainModel);
    CHECK(m.net.has_variable("A"));
    CHECK(m.net.has_variable("AimpB"));
    CHECK(m.net.parameters().size() == 3);
    REQUIRE(m.conditionals.size() == 1);
    CHECK(m.conditionals[0].first == "c1");
    REQUIRE(m.queries.size() == 6);

    Report r = run_model(m, RunOptions{});
    CHECK(r.errors == 0);
    CHECK(r.json.at("schema") == 1);
    CHECK(result_of(r, 0, "result") == "z + x y - x z");
    CHECK(result_of(r, 1, "result") == "(x y)/(x)");  // quotient left unsimplified
    CHECK(result_of(r, 2, "result") == "1 - x + x y");
    CHECK(r.json.at("queries").at(3).at("set").at("alpha") == "1");
    CHECK(r.json.at("queries").at(3).at("set").at("beta") == "1");
    // facts force the subjunctive sense to 0, so asserting 1 is impossible
    CHECK(result_of(r, 4, "status") == "impossible");
    CHECK(result_of(r, 5, "status") == "necessary");
}

TEST_CASE("model file: joint blocks and assertions") {
    ModelFile m = parse_model(R"(
var A
var B
param x1 in [0,1]
param x2 in [0,1]
param x3 in [0,1]
param x4 in [0,1]
joint P0(A,B) { TT: x1 ; TF: x2 ; FT: x3 ; FF: x4 }
assert P(A=T) = 1
query set P(B=T)
query set P(B=T) given { P(A=T,B=F) = 0 }
)");
    Report r = run_model(m, RunOptions{});
    CHECK(r.errors == 0);
    CHECK(r.json.at("queries").at(0).at("set").at("alpha") == "0");
    CHECK(r.json.at("queries").at(0).at("set").at("beta") == "1");
    CHECK(r.json.at("queries").at(1).at("set").at("alpha") == "1");
}

TEST_CASE("model file: load errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_model("nonsense A\n"), doctest::Contains("line 1"), LoadError);
    CHECK_THROWS_WITH_AS(parse_model("param q in [0,1]\ntable P0(A) { T: q ; F: 1-q }\n"),
                         doctest::Contains("line 2"), LoadError);
    CHECK_THROWS_WITH_AS(
        parse_model("var A\nparam x in [0,1]\ntable P0(A) { T: w ; F: 1-w }\n"),
        doctest::Contains("undeclared parameter: w"), LoadError);
    CHECK_THROWS_WITH_AS(parse_model("var A\nquery status c9\n"),
                         doctest::Contains("unknown conditional id"), LoadError);
    CHECK_THROWS_WITH_AS(parse_model("var A\nparam x in [0,1]\ntable P0(A) { T: x ; F: x }\n"),
                         doctest::Contains("line 3"), LoadError);
}

TEST_CASE("model file: integer parameters and strict inequalities") {
    ModelFile m = parse_model(R"(
var A
param n int in {0,1}
param x in [0,1]
table P0(A) { T: x ; F: 1-x }
query set P(A=T) given { P(A=T) > 0 }
)");
    CHECK(m.net.parameters().at("n").integer_restricted);
    Report r = run_model(m, RunOptions{});
    CHECK(r.json.at("queries").at(0).at("set").at("alpha") == "1/1000");
    RunOptions wide;
    wide.epsilon = Rational(1, 10);
    CHECK(run_model(m, wide).json.at("queries").at(0).at("set").at("alpha") == "1/10");
}

TEST_CASE("model file: measures block") {
    ModelFile m = parse_model(R"(
measures { element | value:cents | ratio!:percent ;
  a | 1 | -5 ;
  b | 3 | 7 }
query measure value P({a})
query measure value P({a} | {a, b})
query measure ratio P({a})
)");
    REQUIRE(m.measures.has_value());
    CHECK(m.measures->unit("value") == "cents");
    CHECK(!m.measures->is_measure("ratio"));
    Report r = run_model(m, RunOptions{});
    CHECK(result_of(r, 0, "result") == "1/4");
    CHECK(result_of(r, 1, "result") == "1/4");
    // the ratio column is rejected: a query error, execution continues
    CHECK(r.errors == 1);
    CHECK(r.json.at("queries").at(2).contains("error"));
}

TEST_CASE("model file: render round-trips") {
    const char* sources[] = {kChainModel, R"(
var A
var B
param x1 in [0,1]
param x2 in [0,1]
param x3 in [0,1]
param x4 in [0,1]
joint P0(A,B) { TT: x1 ; TF: x2 ; FT: x3 ; FF: x4 }
assert P(A=T) = 1
cond mat k=1/2 : A => !B
cond feas k=0 : { P(A=T) = 1 } => B
cond bf K=T : "A & B" => "B"
measures { element | value:cents ; a | 1 ; b | 3 }
query set P(B=T)
query measure value P({a})
)"};
    for (const char* src : sources) {
        ModelFile m = parse_model(src);
        std::string once = render_model(m);
        std::string twice = render_model(parse_model(once));
        CHECK(once == twice);
        // and the reparsed model behaves identically
        Report a = run_model(m, RunOptions{});
        Report b = run_model(parse_model(once), RunOptions{});
        CHECK(a.json == b.json);
    }
}

TEST_CASE("reports are deterministic") {
    ModelFile m = parse_model(kChainModel);
    RunOptions opts;
    opts.oracle_check = true;
    Report a = run_model(m, opts);
    Report b = run_model(m, opts);
    CHECK(a.text == b.text);
    CHECK(a.json == b.json);
}

TEST_CASE("oracle check annotates eligible programs") {
    ModelFile m = parse_model(R"(
var A
var B
param x in [0,1]
param y in [0,1]
param z in [0,1]
table P0(A) { T: x ; F: 1-x }
table P0(B|A) { T|T: y ; F|T: 1-y ; T|F: z ; F|F: 1-z }
query set P(B=T) given { P(A=T)=1 ; P0(B=T|A=T)=1 }
)");
    RunOptions opts;
    opts.oracle_check = true;
    Report r = run_model(m, opts);
    CHECK(r.errors == 0);
    REQUIRE(r.json.at("queries").at(0).contains("oracle"));
    CHECK(r.json.at("queries").at(0).at("oracle").at(0).at("ok") == true);
}

TEST_CASE("corpus: every case matches its expected results") {
    Report r = run_corpus("all", RunOptions{});
    CHECK(r.mismatches == 0);
    CHECK(r.json.at("mismatches") == 0);
    // all built-in cases are present
    CHECK(r.json.at("cases").size() == corpus_names().size());
}

TEST_CASE("corpus: single case and unknown case") {
    Report r = run_corpus("f8", RunOptions{});
    CHECK(r.mismatches == 0);
    CHECK(r.text.find("16") != std::string::npos);
    CHECK_THROWS_AS(run_corpus("nope", RunOptions{}), QueryError);
}
