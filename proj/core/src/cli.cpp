#include "caymaze/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "caymaze/bounds.hpp"
#include "caymaze/dsl.hpp"
#include "caymaze/oracle.hpp"
#include "caymaze/report.hpp"
#include "caymaze/scenario.hpp"
#include "caymaze/simulator.hpp"

namespace caymaze {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kExhausted = 2;
constexpr int kViolation = 3;

std::optional<dsl::SpecDocument> load_spec(const std::string& path,
                                           std::ostream& err) {
    std::ifstream f(path);
    if (!f) {
        err << "cannot open spec file '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream body;
    body << f.rdbuf();
    auto result = dsl::parse_spec(body.str());
    if (auto* pe = std::get_if<dsl::ParseError>(&result)) {
        err << path << ": " << pe->render() << "\n";
        return std::nullopt;
    }
    return std::get<dsl::SpecDocument>(std::move(result));
}

GroupBackend parse_group_option(const std::string& text) {
    std::istringstream in(text);
    std::string fam;
    in >> fam;
    if (fam == "free-abelian" || fam == "free") {
        int k = 0;
        in >> k;
        return fam == "free-abelian" ? GroupBackend::free_abelian(k)
                                     : GroupBackend::free_group(k);
    }
    if (fam == "finite-abelian") {
        std::vector<long long> mods;
        long long x;
        while (in >> x) mods.push_back(x);
        return GroupBackend::finite_abelian(std::move(mods));
    }
    if (fam == "heisenberg") {
        long long p = 0;
        in >> p;
        return GroupBackend::heisenberg_mod_p(p);
    }
    if (fam == "table") {
        std::string path;
        in >> path;
        std::ifstream f(path);
        if (!f) throw GroupError("cannot open table file '" + path + "'");
        std::ostringstream body;
        body << f.rdbuf();
        return GroupBackend::mult_table(
            GroupBackend::parse_mult_table(body.str()));
    }
    throw GroupError("unknown group family '" + fam + "'");
}

int emit_and_rc(const ExplorationReport& rep, const GroupBackend& backend,
                bool as_json, std::ostream& out) {
    out << emit_report(rep, backend,
                       as_json ? ReportFormat::Json : ReportFormat::Text);
    if (as_json) out << "\n";
    return rep.verdict == Verdict::BudgetExhausted ? kExhausted : kOk;
}

int cmd_simulate(const std::string& spec_path, long long steps,
                 long long max_steps, const std::string& trace_path,
                 std::ostream& out, std::ostream& err) {
    auto doc = load_spec(spec_path, err);
    if (!doc) return kUsage;
    if (steps > max_steps) {
        err << "requested steps exceed the resource cap of " << max_steps
            << "\n";
        return kExhausted;
    }
    std::ofstream file;
    std::ostream* sink = &out;
    if (!trace_path.empty()) {
        file.open(trace_path);
        if (!file) {
            err << "cannot open trace file '" << trace_path << "'\n";
            return kUsage;
        }
        sink = &file;
    }
    Configuration cur = start_configuration(doc->collective);
    *sink << render_configuration(doc->backend, cur) << "\n";
    for (long long t = 0; t < steps; ++t) {
        cur = step(doc->backend, doc->collective, cur);
        *sink << render_configuration(doc->backend, cur) << "\n";
    }
    return kOk;
}

int cmd_certify(const std::string& spec_path, long long budget,
                bool all_starts, bool as_json, std::ostream& out,
                std::ostream& err) {
    auto doc = load_spec(spec_path, err);
    if (!doc) return kUsage;
    if (!all_starts)
        return emit_and_rc(
            certify(doc->backend, doc->collective,
                    start_configuration(doc->collective), budget),
            doc->backend, as_json, out);

    auto elems = doc->backend.enumerate_elements(1'000'000);
    if (!elems) {
        err << "--all-starts needs an enumerable backend\n";
        return kExhausted;
    }
    long long finite = 0, drift = 0, exhausted = 0;
    for (const auto& g : *elems) {
        Collective shifted = doc->collective;
        for (auto& v : shifted.start_positions)
            v = doc->backend.multiply(g, v);
        const ExplorationReport rep = certify(
            doc->backend, shifted, start_configuration(shifted), budget);
        switch (rep.verdict) {
            case Verdict::FiniteExploration: ++finite; break;
            case Verdict::DriftUnbounded: ++drift; break;
            case Verdict::BudgetExhausted: ++exhausted; break;
        }
    }
    out << "starts: " << elems->size() << " FiniteExploration: " << finite
        << " DriftUnbounded: " << drift << " BudgetExhausted: " << exhausted
        << "\n";
    return exhausted > 0 ? kExhausted : kOk;
}

int cmd_bounds(int m, long long qa, long long exponent, std::ostream& out) {
    const BoundTable table =
        compute_bounds(BoundParams{m, qa, exponent});
    for (int l = 1; l <= m; ++l)
        out << "H_" << l << "=" << table.H[l - 1].render() << " O_" << l
            << "=" << table.O[l - 1].render() << "\n";
    return kOk;
}

int cmd_verify_exponent(const std::string& spec_path,
                        std::optional<long long> m_opt, long long cap,
                        std::ostream& out, std::ostream& err) {
    auto doc = load_spec(spec_path, err);
    if (!doc) return kUsage;
    long long m;
    if (m_opt)
        m = *m_opt;
    else if (auto e = doc->backend.exponent())
        m = *e;
    else {
        err << "backend declares no exponent; pass --exponent\n";
        return kUsage;
    }
    const ExponentCheck check =
        doc->backend.verify_exponent(m, static_cast<std::size_t>(cap));
    switch (check.status) {
        case ExponentCheck::Status::Verified:
            out << "Verified: g^" << m << " = e for all "
                << (doc->backend.order() ? std::to_string(*doc->backend.order())
                                         : "enumerated")
                << " elements\n";
            return kOk;
        case ExponentCheck::Status::Counterexample:
            out << "Counterexample: " << doc->backend.render(*check.witness)
                << "\n";
            return kViolation;
        case ExponentCheck::Status::CapExceeded:
            out << "CapExceeded\n";
            return kExhausted;
    }
    return kUsage;
}

int cmd_verify_single(const std::string& spec_path, long long budget,
                      std::ostream& out, std::ostream& err) {
    auto doc = load_spec(spec_path, err);
    if (!doc) return kUsage;
    if (doc->collective.size() != 1) {
        err << "verify single needs a collective of exactly one automaton\n";
        return kUsage;
    }
    const auto oracle_result = oracle::single_automaton_oracle(
        doc->backend, doc->collective.members[0],
        doc->collective.start_states[0]);
    const auto cyc = detect_cycle(doc->backend, doc->collective,
                                  start_configuration(doc->collective), budget);
    if (!cyc) {
        out << "BudgetExhausted\n";
        return kExhausted;
    }
    out << "oracle: U=" << oracle_result.preperiod
        << " T=" << oracle_result.period << "\n";
    out << "simulator: U=" << cyc->preperiod << " T=" << cyc->quotient_period
        << "\n";
    if (oracle_result.preperiod != cyc->preperiod ||
        oracle_result.period != cyc->quotient_period) {
        out << "MISMATCH\n";
        return kViolation;
    }
    out << "match\n";
    return kOk;
}

int cmd_verify_orbit(const std::string& spec_path, long long budget,
                     long long cap, std::ostream& out, std::ostream& err) {
    auto doc = load_spec(spec_path, err);
    if (!doc) return kUsage;
    if (!doc->backend.is_finite()) {
        err << "verify orbit needs a finite backend\n";
        return kUsage;
    }
    const auto orbit = oracle::exhaustive_orbit_oracle(
        doc->backend, doc->collective, start_configuration(doc->collective),
        static_cast<std::size_t>(cap));
    if (!orbit) {
        out << "CapExceeded\n";
        return kExhausted;
    }
    const ExplorationReport rep =
        certify(doc->backend, doc->collective,
                start_configuration(doc->collective), budget);
    if (rep.verdict != Verdict::FiniteExploration) {
        out << to_string(rep.verdict) << "\n";
        return kExhausted;
    }
    out << "oracle: U=" << orbit->preperiod << " T_pair=" << orbit->pair_period
        << "\n";
    out << "simulator: U=" << rep.preperiod << " T_pair=" << *rep.pair_period
        << "\n";
    if (orbit->preperiod != rep.preperiod ||
        orbit->pair_period != *rep.pair_period) {
        out << "MISMATCH\n";
        return kViolation;
    }
    out << "match\n";
    return kOk;
}

std::vector<int> parse_loop_word(const std::string& text) {
    std::vector<int> word;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, '.')) {
        bool inverse = false;
        if (!part.empty() && part.back() == '\'') {
            inverse = true;
            part.pop_back();
        }
        if (part.size() < 2 || part[0] != 's')
            throw GroupError("bad letter '" + part + "' in loop word");
        const int idx = std::stoi(part.substr(1));
        word.push_back(inverse ? -idx : idx);
    }
    if (word.empty()) throw GroupError("empty loop word");
    return word;
}

int cmd_scenario(const std::string& name, const std::string& group_text,
                 int gen, const std::string& word_text, std::uint64_t seed,
                 int m, int q_max, long long budget, bool as_json,
                 std::ostream& out, std::ostream& err) {
    if (name == "line-explorer") {
        const scenario::Scenario s = scenario::build_line_explorer();
        return emit_and_rc(certify(s.backend, s.collective,
                                   start_configuration(s.collective), budget),
                           s.backend, as_json, out);
    }
    GroupBackend backend = parse_group_option(group_text);
    Collective col;
    if (name == "stayer" || name == "drifter" || name == "looper") {
        Automaton a;
        if (name == "stayer")
            a = scenario::build_stayer();
        else if (name == "drifter")
            a = scenario::build_drifter(gen);
        else
            a = scenario::build_looper(parse_loop_word(word_text));
        col.members = {a};
        col.start_states = {0};
        col.start_positions = {backend.identity()};
    } else if (name == "random") {
        col = scenario::random_collective(seed, m, q_max, backend);
    } else {
        err << "unknown scenario '" << name << "'\n";
        return kUsage;
    }
    const AdmissibilityReport adm = admissibility_check(col, backend);
    if (!adm.valid()) {
        err << "scenario is not admissible: " << adm.violations.front()
            << "\n";
        return kUsage;
    }
    return emit_and_rc(
        certify(backend, col, start_configuration(col), budget), backend,
        as_json, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"finite-automata collectives on Cayley graphs"};
    app.require_subcommand(1);

    std::string spec_path, trace_path, group_text = "heisenberg 3";
    std::string scenario_name, word_text = "s1";
    long long steps = 100, budget = 1'000'000, max_steps = 100'000'000;
    long long cap = 10'000'000;
    std::optional<long long> exponent_opt;
    long long exp_value = 0;
    int m = 1, gen = 1, q_max = 3;
    long long qa = 1, bounds_exp = 1;
    std::uint64_t seed = 0;
    bool all_starts = false, as_json = false;

    auto* sim = app.add_subcommand("simulate", "run and print a trace");
    sim->add_option("spec", spec_path)->required();
    sim->add_option("--steps", steps);
    sim->add_option("--max-steps", max_steps);
    sim->add_option("--trace", trace_path);

    auto* cert = app.add_subcommand("certify", "certify bounded exploration");
    cert->add_option("spec", spec_path)->required();
    cert->add_option("--budget", budget);
    cert->add_flag("--all-starts", all_starts);
    cert->add_flag("--json", as_json);

    auto* bnd = app.add_subcommand("bounds", "print the H/O bound table");
    bnd->add_option("--m", m)->required();
    bnd->add_option("--qa", qa)->required();
    bnd->add_option("--exponent", bounds_exp)->required();

    auto* ver = app.add_subcommand("verify", "brute-force cross-checks");
    ver->require_subcommand(1);
    auto* ver_exp = ver->add_subcommand("exponent", "check g^M = e");
    ver_exp->add_option("spec", spec_path)->required();
    auto* exp_opt = ver_exp->add_option("--exponent", exp_value);
    ver_exp->add_option("--cap", cap);
    auto* ver_single =
        ver->add_subcommand("single", "functional-graph oracle vs simulator");
    ver_single->add_option("spec", spec_path)->required();
    ver_single->add_option("--budget", budget);
    auto* ver_orbit =
        ver->add_subcommand("orbit", "exhaustive orbit oracle vs certify");
    ver_orbit->add_option("spec", spec_path)->required();
    ver_orbit->add_option("--budget", budget);
    ver_orbit->add_option("--cap", cap);

    auto* scn = app.add_subcommand("scenario", "run a built-in scenario");
    scn->add_option("name", scenario_name)->required();
    scn->add_option("--group", group_text);
    scn->add_option("--gen", gen);
    scn->add_option("--word", word_text);
    scn->add_option("--seed", seed);
    scn->add_option("--m", m);
    scn->add_option("--qmax", q_max);
    scn->add_option("--budget", budget);
    scn->add_flag("--json", as_json);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << e.what() << "\n";
        return kUsage;
    }
    if (exp_opt->count() > 0) exponent_opt = exp_value;

    try {
        if (sim->parsed())
            return cmd_simulate(spec_path, steps, max_steps, trace_path, out,
                                err);
        if (cert->parsed())
            return cmd_certify(spec_path, budget, all_starts, as_json, out,
                               err);
        if (bnd->parsed()) return cmd_bounds(m, qa, bounds_exp, out);
        if (ver->parsed()) {
            if (ver_exp->parsed())
                return cmd_verify_exponent(spec_path, exponent_opt, cap, out,
                                           err);
            if (ver_single->parsed())
                return cmd_verify_single(spec_path, budget, out, err);
            if (ver_orbit->parsed())
                return cmd_verify_orbit(spec_path, budget, cap, out, err);
        }
        if (scn->parsed())
            return cmd_scenario(scenario_name, group_text, gen, word_text,
                                seed, m, q_max, budget, as_json, out, err);
    } catch (const BoundsError& e) {
        err << e.what() << "\n";
        return kExhausted;
    } catch (const GroupError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const SimulationError& e) {
        err << e.what() << "\n";
        return kViolation;
    }
    return kUsage;
}

}  // namespace caymaze
