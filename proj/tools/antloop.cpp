#include "antloop/ant.hpp"
#include "antloop/generate.hpp"
#include "antloop/properties.hpp"
#include "antloop/simulate.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using namespace antloop;

constexpr int kExitTerminating = 0;
constexpr int kExitNonTerminating = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitInputError = 64;
constexpr int kExitIrrationalSpectrum = 65;
constexpr int kExitCheckFailed = 3;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

LoopProgram load_program(const std::string& path, bool json_input) {
    std::string text = read_input(path);
    if (json_input || (!text.empty() && text.find_first_not_of(" \t\r\n") != std::string::npos &&
                       text[text.find_first_not_of(" \t\r\n")] == '{'))
        return program_from_json(text);
    return parse_program(text);
}

QVector parse_point(const std::string& text, int dim) {
    QVector out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        auto q = parse_rational(token);
        if (!q) throw std::runtime_error("bad rational in point: '" + token + "'");
        out.push_back(*q);
    }
    if (static_cast<int>(out.size()) != dim)
        throw std::runtime_error("point has " + std::to_string(out.size()) +
                                 " coordinates, program has " + std::to_string(dim));
    return out;
}

int cmd_analyze(const std::string& input, bool json_input, const std::string& domain,
                const std::string& format, long int_budget, bool trace) {
    LoopProgram p = load_program(input, json_input);
    AnalyzeOptions opt;
    opt.integer_budget = int_budget;
    opt.integer_verdict = true;
    AnalysisReport report = analyze(p, opt);

    if (format == "json")
        std::cout << report_to_json(report, trace) << "\n";
    else if (format == "smt2")
        std::cout << report.ant_set.to_smt2();
    else
        std::cout << report_to_text(report, trace);

    Verdict v = domain == "real" ? report.verdict_real
                : domain == "integer" ? report.verdict_integer
                                      : report.verdict_rational;
    switch (v) {
        case Verdict::Terminating: return kExitTerminating;
        case Verdict::NonTerminating: return kExitNonTerminating;
        default: return kExitUnknown;
    }
}

int cmd_simulate(const std::string& input, bool json_input, const std::string& x0_text,
                 int horizon, bool exact) {
    LoopProgram p = load_program(input, json_input);
    QVector x0 = parse_point(x0_text, p.dim());
    Trace t = run_scan(p, x0, horizon);
    for (size_t k = 0; k < t.guard_values.size(); ++k) {
        std::cout << "k=" << k << " guard=[";
        for (size_t i = 0; i < t.guard_values[k].size(); ++i) {
            const Rational& g = t.guard_values[k][i];
            std::cout << (i ? " " : "") << (exact ? to_string(g) : approx_string(g));
        }
        std::cout << "]\n";
    }
    if (t.first_violation)
        std::cout << "first violation: step " << t.first_violation->first << ", condition "
                  << t.first_violation->second + 1 << "\n";
    else
        std::cout << "no violation within " << horizon << " steps\n";
    HorizonStatus st = check_ant_at_horizon(p, x0, horizon);
    if (st.kind == HorizonStatus::PositiveTail)
        std::cout << "guard positive from step " << st.index << " through the horizon\n";
    else
        std::cout << "terminated: guard still violated at the horizon (first at step " << st.index
                  << ")\n";
    return 0;
}

int cmd_generate(const GenerateParams& params, const std::string& out_dir) {
    auto programs = generate_programs(params);
    write_corpus(programs, params, out_dir);
    std::cout << "wrote " << programs.size() << " programs to " << out_dir << "\n";
    return 0;
}

int cmd_check(const std::string& corpus, int horizon, uint64_t seed, long int_budget) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    fs::path manifest = fs::path(corpus) / "manifest.json";
    if (fs::exists(manifest)) {
        nlohmann::json m = nlohmann::json::parse(read_input(manifest.string()));
        for (const auto& name : m.at("programs"))
            files.push_back(fs::path(corpus) / name.get<std::string>());
    } else {
        for (const auto& e : fs::directory_iterator(corpus))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
    }
    if (files.empty()) {
        std::cerr << "no programs found in " << corpus << "\n";
        return kExitInputError;
    }

    int failures = 0, terminating = 0, nonterminating = 0;
    for (const auto& file : files) {
        std::string text = read_input(file.string());
        LoopProgram p = program_from_json(text);
        std::optional<SemiLinearSet> expected;
        nlohmann::json j = nlohmann::json::parse(text);
        if (j.contains("expected_ant")) {
            SemiLinearSet s(p.dim(), p.var_names);
            for (const auto& jc : j.at("expected_ant").at("cells")) {
                Cell cell;
                for (const auto& ja : jc) {
                    Atom a;
                    for (const auto& c : ja.at("coeffs")) {
                        auto q = parse_rational(c.is_string() ? c.get<std::string>()
                                                              : std::to_string(c.get<long>()));
                        a.coeffs.push_back(*q);
                    }
                    a.offset = ja.contains("offset") ? *parse_rational(
                                                           ja.at("offset").is_string()
                                                               ? ja.at("offset").get<std::string>()
                                                               : std::to_string(ja.at("offset").get<long>()))
                                                     : Rational(0);
                    a.rel = ja.at("rel") == "eq0" ? Rel::EqZero : Rel::GtZero;
                    cell.atoms.push_back(std::move(a));
                }
                s.add_cell(std::move(cell));
            }
            expected = std::move(s);
        }
        PropertyOptions opt;
        opt.horizon = horizon;
        opt.seed = seed;
        opt.integer_budget = int_budget;
        PropertyResult res = run_properties(p, opt, expected);
        (res.verdict_real == Verdict::Terminating ? terminating : nonterminating)++;
        if (res.pass) {
            std::cout << "PASS " << file.filename().string() << "\n";
        } else {
            ++failures;
            std::cout << "FAIL " << file.filename().string() << "\n";
            for (const auto& msg : res.failures) std::cout << "  " << msg << "\n";
        }
    }
    std::cout << "checked " << files.size() << " programs: " << terminating << " terminating, "
              << nonterminating << " non-terminating (over the reals), " << failures
              << " property failures\n";
    return failures ? kExitCheckFailed : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact termination analysis for linear and affine while loops: computes the "
                 "semi-linear locus of asymptotically non-terminating initial values, decides "
                 "termination over R/Q/Z, and reports the complement as a set of terminating "
                 "inputs."};
    app.require_subcommand(1);

    std::string input = "-", domain = "rational", format = "text", x0_text, out_dir = "corpus";
    std::string corpus, cls = "H";
    bool json_input = false, trace = false, exact = false, jordan = false;
    int horizon = 500;
    long int_budget = 20000;
    GenerateParams gparams;

    auto* analyze_cmd = app.add_subcommand("analyze", "analyze a loop program");
    analyze_cmd->add_option("input", input, "DSL file, JSON file, or '-' for stdin");
    analyze_cmd->add_flag("--json", json_input, "input is the JSON matrix format");
    analyze_cmd->add_option("--domain", domain, "real|rational|integer")
        ->check(CLI::IsMember({"real", "rational", "integer"}));
    analyze_cmd->add_option("--format", format, "text|json|smt2")
        ->check(CLI::IsMember({"text", "json", "smt2"}));
    analyze_cmd->add_option("--int-budget", int_budget, "branch-and-bound node budget");
    analyze_cmd->add_flag("--trace", trace, "include the reduction trace");

    auto* sim_cmd = app.add_subcommand("simulate", "run a program exactly from a start point");
    sim_cmd->add_option("input", input, "DSL file, JSON file, or '-' for stdin");
    sim_cmd->add_flag("--json", json_input, "input is the JSON matrix format");
    sim_cmd->add_option("--x0", x0_text, "start point, comma-separated rationals")->required();
    sim_cmd->add_option("--horizon", horizon, "number of steps");
    sim_cmd->add_flag("--exact", exact, "print exact rationals instead of decimals");

    auto* gen_cmd = app.add_subcommand("generate", "generate a random benchmark corpus");
    gen_cmd->add_option("--count", gparams.count, "number of programs");
    gen_cmd->add_option("--nmin", gparams.n_min, "minimum variable count");
    gen_cmd->add_option("--nmax", gparams.n_max, "maximum variable count");
    gen_cmd->add_option("--mmin", gparams.m_min, "minimum condition count (classes G/A)");
    gen_cmd->add_option("--mmax", gparams.m_max, "maximum condition count (classes G/A)");
    gen_cmd->add_option("--class", cls, "program class: H|G|A")
        ->check(CLI::IsMember({"H", "G", "A"}));
    gen_cmd->add_option("--seed", gparams.seed, "generator seed")->required();
    gen_cmd->add_flag("--jordan", jordan, "allow nontrivial Jordan blocks");
    gen_cmd->add_option("--out", out_dir, "output directory");

    auto* check_cmd = app.add_subcommand("check", "run the property suite over a corpus");
    check_cmd->add_option("corpus", corpus, "corpus directory")->required();
    check_cmd->add_option("--horizon", horizon, "simulation horizon");
    check_cmd->add_option("--seed", gparams.seed, "sampling seed");
    check_cmd->add_option("--int-budget", int_budget, "branch-and-bound node budget");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed())
            return cmd_analyze(input, json_input, domain, format, int_budget, trace);
        if (sim_cmd->parsed()) return cmd_simulate(input, json_input, x0_text, horizon, exact);
        if (gen_cmd->parsed()) {
            gparams.cls = cls == "H" ? LoopClass::Homogeneous
                          : cls == "G" ? LoopClass::GeneralizedHomogeneous
                                       : LoopClass::Affine;
            gparams.jordan_blocks = jordan;
            return cmd_generate(gparams, out_dir);
        }
        if (check_cmd->parsed()) return cmd_check(corpus, horizon, gparams.seed, int_budget);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const IrrationalSpectrum& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return kExitIrrationalSpectrum;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
