#include "ppn/model.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>

namespace {

// Exit codes: 0 ok, 1 query error (or corpus mismatch), 2 load error.
constexpr int kExitOk = 0;
constexpr int kExitQueryError = 1;
constexpr int kExitLoadError = 2;

void emit(const ppn::Report& report, const ppn::RunOptions& options) {
    if (options.format == "json")
        std::cout << report.json.dump(2) << "\n";
    else
        std::cout << report.text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric probability networks: symbolic inference, conditional analysis, "
                 "and exact optimization over model files"};
    app.require_subcommand(1);

    ppn::RunOptions options;
    std::string epsilon_text = "1/1000";
    app.add_option("--epsilon", epsilon_text,
                   "margin used for strict inequalities (rational, default 1/1000)");
    app.add_option("--format", options.format, "report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--oracle-check", options.oracle_check,
                 "cross-check eligible programs against the sampling oracle");
    app.add_option("--grid", options.grid, "sampling-oracle resolution (default 200)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--dump-programs", options.dump_programs,
                 "include the generated optimization programs in the report");

    std::string model_path;
    CLI::App* run = app.add_subcommand("run", "execute the queries in a model file");
    run->add_option("file", model_path, "model file")->required();

    std::string corpus_name;
    CLI::App* corpus =
        app.add_subcommand("corpus", "run a built-in example against its expected results");
    corpus->add_option("name", corpus_name, "case name or 'all'")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        options.epsilon = ppn::parse_rational(epsilon_text);
    } catch (const ppn::Error& e) {
        std::cerr << "error: invalid --epsilon: " << e.what() << "\n";
        return kExitLoadError;
    }

    try {
        if (run->parsed()) {
            ppn::ModelFile model;
            try {
                model = ppn::load_model(model_path);
            } catch (const ppn::LoadError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitLoadError;
            }
            ppn::Report report = ppn::run_model(model, options);
            emit(report, options);
            return report.errors == 0 ? kExitOk : kExitQueryError;
        }
        ppn::Report report = ppn::run_corpus(corpus_name, options);
        emit(report, options);
        return report.errors == 0 ? kExitOk : kExitQueryError;
    } catch (const ppn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitQueryError;
    }
}
