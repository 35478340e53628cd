// Command-line front end: profiles and scans of the square-root coverage,
// Cremona manipulation, nef tests, interpolation oracle runs, construction
// traces, and mosaic goodness checks.  Every command echoes its parsed inputs
// and emits a deterministic document; all randomness flows from --seed.
//
// Exit codes: 0 success; 1 negative domain verdict under --strict (not nef,
// not covered, trace failed, cycle not good, degree-negative reduction);
// 2 usage or input error; 3 internal invariant failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nagata/coverage.hpp"
#include "nagata/cremona.hpp"
#include "nagata/interp.hpp"
#include "nagata/jsonio.hpp"
#include "nagata/mosaic.hpp"
#include "nagata/picard.hpp"
#include "nagata/trace.hpp"

namespace {

using nagata::Int;
using nagata::Json;

struct GlobalOpts {
    std::string format = "table";
    bool strict = false;
    bool verbose = false;
    std::uint64_t seed = 0;
};

Int to_int(const std::string& text, const char* what) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(std::string(what) + ": '" + text + "' is not an integer");
    }
}

std::string two_columns(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    std::ostringstream out;
    for (const auto& [k, v] : rows)
        out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    return out.str();
}

// Renders and returns the process exit code; `negative` is the command's
// domain verdict, mapped to 1 only under --strict.
int emit(const GlobalOpts& g, const std::string& command, Json inputs, Json output,
         const std::string& table, bool negative) {
    int code = (g.strict && negative) ? 1 : 0;
    if (g.format == "json") {
        Json doc;
        doc["command"] = command;
        doc["inputs"] = std::move(inputs);
        doc["output"] = std::move(output);
        doc["exit_code"] = code;
        std::cout << nagata::dump_json(doc);
    } else {
        std::cout << table;
    }
    return code;
}

void reject_csv(const GlobalOpts& g, const std::string& command) {
    if (g.format == "csv")
        throw std::invalid_argument("csv output is only available for profile and scan, not " +
                                    command);
}

std::string plain(const Json& j) {
    return j.is_string() ? j.get<std::string>() : j.dump();
}

std::string profile_csv_row(const Json& p) {
    return plain(p.at("r")) + "," + plain(p.at("k")) + "," + plain(p.at("alpha")) + "," +
           p.at("epsilon").at("decimal").get<std::string>() + "," +
           p.at("coverage").get<std::string>();
}

int run_profile(const GlobalOpts& g, const std::string& r_text) {
    nagata::SqrtProfile p = nagata::sqrt_profile(to_int(r_text, "r"));
    Json jp = nagata::json_of(p);
    std::string table;
    if (g.format == "csv") {
        table = "r,k,alpha,epsilon,coverage\n" + profile_csv_row(jp) + "\n";
    } else {
        table = two_columns({{"r", nagata::to_string(p.r)},
                             {"k", nagata::to_string(p.k)},
                             {"alpha", nagata::to_string(p.alpha)},
                             {"epsilon", p.epsilon.decimal()},
                             {"coverage", nagata::to_string(p.coverage)}});
    }
    bool negative = p.coverage != nagata::Coverage::Case1 && p.coverage != nagata::Coverage::Case2;
    if (g.format == "csv") {
        std::cout << table;
        return (g.strict && negative) ? 1 : 0;
    }
    return emit(g, "profile", Json{{"r", nagata::json_of(p.r)}}, jp, table, negative);
}

int run_scan(const GlobalOpts& g, const std::string& lo_text, const std::string& hi_text,
             const std::string& cache_path) {
    Int lo = to_int(lo_text, "r_lo"), hi = to_int(hi_text, "r_hi");
    if (lo > hi) throw std::invalid_argument("scan: empty range, r_lo > r_hi");
    if (lo < 2) throw std::invalid_argument("scan: r_lo must be >= 2");

    std::map<std::string, Json> cache;
    if (!cache_path.empty()) {
        std::ifstream in(cache_path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            Json record = Json::parse(line, nullptr, false);
            if (record.is_discarded() || !record.contains("key") || !record.contains("result"))
                throw std::invalid_argument("scan: cache line " + std::to_string(lineno) +
                                            " is not a {key, result} record");
            cache[record.at("key").get<std::string>()] = record.at("result");
        }
    }

    std::size_t computed = 0, cached = 0;
    std::vector<Json> rows;
    std::ofstream append;
    if (!cache_path.empty()) append.open(cache_path, std::ios::app);
    for (Int r = lo; r <= hi; ++r) {
        std::string key = nagata::to_string(r);
        auto it = cache.find(key);
        if (it != cache.end()) {
            ++cached;
            rows.push_back(it->second);
            continue;
        }
        ++computed;
        Json row = nagata::json_of(nagata::sqrt_profile(r));
        if (!cache_path.empty()) {
            Json record;
            record["key"] = key;
            record["result"] = row;
            append << record.dump() << '\n';
        }
        rows.push_back(std::move(row));
    }
    if (g.verbose)
        std::cerr << "scan: computed " << computed << ", cached " << cached << '\n';

    if (g.format == "csv") {
        std::ostringstream out;
        out << "r,k,alpha,epsilon,coverage\n";
        for (const Json& row : rows) out << profile_csv_row(row) << '\n';
        std::cout << out.str();
        return 0;
    }
    std::ostringstream table;
    for (const Json& row : rows)
        table << plain(row.at("r")) << "  " << row.at("coverage").get<std::string>() << "  k="
              << plain(row.at("k")) << " alpha=" << plain(row.at("alpha"))
              << " eps=" << row.at("epsilon").at("decimal").get<std::string>() << '\n';
    Json output;
    output["profiles"] = rows;
    return emit(g, "scan",
                Json{{"r_lo", nagata::json_of(lo)}, {"r_hi", nagata::json_of(hi)}},
                output, table.str(), false);
}

std::string log_table(const nagata::TransformLog& log) {
    std::ostringstream out;
    for (const auto& s : log.steps) {
        out << s.kind;
        if (s.s) out << " s=" << *s.s;
        if (!s.indices.empty()) {
            out << " [";
            for (std::size_t i = 0; i < s.indices.size(); ++i)
                out << (i ? "," : "") << s.indices[i];
            out << "]";
        }
        out << ": " << s.before << " -> " << s.after << '\n';
    }
    return out.str();
}

int run_cremona(const GlobalOpts& g, const std::string& class_text, const std::string& rule,
                long s, const std::vector<std::size_t>& indices) {
    reject_csv(g, "cremona");
    nagata::ParsedClass parsed = nagata::parse_class(class_text);
    nagata::TransformLog log;
    std::string image_str;

    if (rule == "elem") {
        if (parsed.ruled)
            throw std::invalid_argument("cremona: the elementary transform acts on plane classes");
        if (indices.size() != 3)
            throw std::invalid_argument("cremona: --indices must name exactly 3 centers");
        nagata::PicardClass image =
            nagata::elementary_quadratic(parsed.plane, indices[0], indices[1], indices[2]);
        log.steps.push_back({"elementary", std::nullopt, indices,
                             nagata::to_string(parsed.plane), nagata::to_string(image)});
        image_str = nagata::to_string(image);
    } else if (rule == "1" || rule == "2" || rule == "3" || rule == "4") {
        if (!parsed.ruled)
            throw std::invalid_argument("cremona: rules 1-4 act on @F0/@F1 classes");
        const nagata::RuledClass& before = parsed.surface;
        nagata::RuledClass image;
        if (rule == "1") image = nagata::rule1(before, s, indices);
        else if (rule == "2") image = nagata::rule2(before, s, indices);
        else if (rule == "3") image = nagata::rule3(before, s, indices);
        else image = nagata::rule4(before, s, indices);
        log.steps.push_back({"rule" + rule, s, indices, nagata::to_string(before),
                             nagata::to_string(image)});
        image_str = nagata::to_string(image);
    } else {
        throw std::invalid_argument("cremona: --rule must be one of 1, 2, 3, 4, elem");
    }

    Json inputs;
    inputs["class"] = class_text;
    inputs["rule"] = rule;
    if (rule != "elem") inputs["s"] = s;
    inputs["indices"] = indices;
    Json output;
    output["image"] = image_str;
    output["log"] = nagata::json_of(log);
    return emit(g, "cremona", inputs, output, "image  " + image_str + "\n" + log_table(log),
                false);
}

int run_reduce(const GlobalOpts& g, const std::string& class_text) {
    reject_csv(g, "reduce");
    nagata::ReduceResult res = nagata::reduce(nagata::parse_plane_class(class_text));
    bool negative = res.status != nagata::ReduceStatus::Standard;
    std::string table =
        two_columns({{"result", nagata::to_string(res.result)},
                     {"status", negative ? "degree-negative" : "standard"},
                     {"steps", std::to_string(res.log.steps.size())}}) +
        log_table(res.log);
    return emit(g, "reduce", Json{{"class", class_text}}, nagata::json_of(res), table, negative);
}

int run_nef(const GlobalOpts& g, const std::string& class_text) {
    reject_csv(g, "nef");
    nagata::NefVerdict v = nagata::is_nef_small(nagata::parse_plane_class(class_text));
    std::string table =
        v.nef ? "nef (tested " + std::to_string(v.tested) + " classes)\n"
              : "not nef: pairs to " + nagata::to_string(v.violation) + " with " +
                    nagata::to_string(*v.violator) + "\n";
    return emit(g, "nef", Json{{"class", class_text}}, nagata::json_of(v), table, !v.nef);
}

std::string h0_table(const nagata::H0Result& res) {
    std::vector<std::pair<std::string, std::string>> rows{
        {"h0", nagata::to_string(res.h0)},
        {"expected", nagata::to_string(res.expected)},
        {"special", res.special ? "yes" : "no"},
        {"matrix", nagata::to_string(res.rows) + " x " + nagata::to_string(res.cols)}};
    if (res.clamped) rows.push_back({"clamped", "yes"});
    return two_columns(rows);
}

int run_h0(const GlobalOpts& g, const std::string& class_text, std::uint64_t prime, int trials) {
    reject_csv(g, "h0");
    nagata::PicardClass c = nagata::parse_plane_class(class_text);
    nagata::OracleParams params{prime, trials, g.seed};
    nagata::H0Result res = nagata::h0_generic(nagata::make_problem(c, params));
    Json inputs;
    inputs["class"] = class_text;
    inputs["prime"] = prime;
    inputs["trials"] = trials;
    inputs["seed"] = g.seed;
    return emit(g, "h0", inputs, nagata::json_of(res), h0_table(res), false);
}

int run_h0_batch(const GlobalOpts& g, const std::string& input_path,
                 const std::string& cache_path, std::uint64_t prime, int trials) {
    reject_csv(g, "h0-batch");
    std::ifstream in(input_path);
    if (!in) throw std::invalid_argument("h0-batch: cannot open " + input_path);

    std::map<std::string, Json> cache;
    if (!cache_path.empty()) {
        std::ifstream cin_file(cache_path);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(cin_file, line)) {
            ++lineno;
            if (line.empty()) continue;
            Json record = Json::parse(line, nullptr, false);
            if (record.is_discarded() || !record.contains("key") || !record.contains("result"))
                throw std::invalid_argument("h0-batch: cache line " + std::to_string(lineno) +
                                            " is not a {key, result} record");
            cache[record.at("key").dump()] = record.at("result");
        }
    }
    std::ofstream append;
    if (!cache_path.empty()) append.open(cache_path, std::ios::app);

    std::size_t computed = 0, cached = 0;
    Json results = Json::array();
    std::ostringstream table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Json req = Json::parse(line, nullptr, false);
        if (req.is_discarded() || !req.contains("class"))
            throw std::invalid_argument("h0-batch: input line " + std::to_string(lineno) +
                                        " is not a {class, ...} record");
        nagata::PicardClass c = nagata::parse_plane_class(req.at("class").get<std::string>());
        nagata::InterpolationProblem problem;
        problem.d = c.degree;
        problem.mults = c.mults;
        problem.prime = req.value("prime", prime);
        problem.trials = req.value("trials", trials);
        problem.seed = req.value("seed", g.seed);

        Json key;
        key["class"] = nagata::to_string(c);
        key["prime"] = problem.prime;
        key["seed"] = problem.seed;
        key["trials"] = problem.trials;

        Json result;
        auto it = cache.find(key.dump());
        if (it != cache.end()) {
            ++cached;
            result = it->second;
        } else {
            ++computed;
            result = nagata::json_of(nagata::h0_generic(problem));
            if (!cache_path.empty()) {
                Json record;
                record["key"] = key;
                record["result"] = result;
                append << record.dump() << '\n';
            }
            cache[key.dump()] = result;
        }
        Json entry;
        entry["class"] = nagata::to_string(c);
        entry["result"] = result;
        results.push_back(entry);
        table << nagata::to_string(c) << "  h0=" << plain(result.at("h0"))
              << " expected=" << plain(result.at("expected"))
              << (result.at("special").get<bool>() ? " special" : "") << '\n';
    }
    if (g.verbose)
        std::cerr << "h0-batch: computed " << computed << ", cached " << cached << '\n';

    Json inputs;
    inputs["input"] = input_path;
    inputs["prime"] = prime;
    inputs["trials"] = trials;
    inputs["seed"] = g.seed;
    Json output;
    output["results"] = results;
    return emit(g, "h0-batch", inputs, output, table.str(), false);
}

std::string trace_table(const nagata::TraceReport& rep) {
    std::ostringstream out;
    out << rep.step << " on r=" << nagata::to_string(rep.r) << " mu=" << nagata::to_string(rep.mu)
        << " j=" << nagata::to_string(rep.j) << "  (k=" << nagata::to_string(rep.k)
        << ", alpha=" << nagata::to_string(rep.alpha)
        << ", coverage=" << nagata::to_string(rep.coverage) << ")\n";
    for (const auto& note : rep.hypothesis_notes) out << "hypothesis violated: " << note << '\n';
    for (const auto& c : rep.classes) out << "  " << c.name << " = " << c.cls << '\n';
    for (const auto& x : rep.intersections)
        out << "  " << x.name << " = " << nagata::to_string(x.value) << '\n';
    for (const auto& m : rep.margins)
        out << "  margin " << m.name << " = " << m.value.str() << " ~ " << m.value.decimal(12)
            << " (claimed " << m.claim << ") " << (m.pass ? "ok" : "VIOLATED") << '\n';
    for (const auto& c : rep.checks)
        out << "  check " << c.name << ": " << (c.pass ? "ok" : "FAILED " + c.detail) << '\n';
    out << log_table(rep.transforms);
    out << (rep.pass ? "pass" : "fail") << (rep.hypothetical ? " (hypothetical)" : "") << '\n';
    return out.str();
}

int run_trace(const GlobalOpts& g, const std::string& step, const std::string& r_text,
              const std::string& mu_text, const std::string& j_text) {
    reject_csv(g, "trace");
    Int r = to_int(r_text, "r"), mu = to_int(mu_text, "mu"), j = to_int(j_text, "j");
    nagata::TraceReport rep;
    if (step == "step1") rep = nagata::trace_step1(r, mu, j);
    else if (step == "step2") rep = nagata::trace_step2(r, mu, j);
    else if (step == "step3") rep = nagata::trace_step3(r, mu, j);
    else if (step == "step4") rep = nagata::trace_step4(r, mu, j);
    else if (step == "step5") rep = nagata::trace_step5(r, mu, j);
    else throw std::invalid_argument("trace: step must be one of step1..step5");

    Json inputs;
    inputs["step"] = step;
    inputs["r"] = nagata::json_of(r);
    inputs["mu"] = nagata::json_of(mu);
    inputs["j"] = nagata::json_of(j);
    bool negative = !rep.pass || rep.hypothetical;
    return emit(g, "trace", inputs, nagata::json_of(rep), trace_table(rep), negative);
}

int run_mosaic_check(const GlobalOpts& g, const std::string& path) {
    reject_csv(g, "mosaic-check");
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("mosaic-check: cannot open " + path);
    Json doc = Json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw std::invalid_argument("mosaic-check: " + path + " is not valid JSON");

    nagata::Mosaic m = nagata::mosaic_from_json(doc.at("mosaic"));
    nagata::MosaicBundle l = nagata::bundle_from_json(doc.at("bundle"));
    nagata::validate(m, l);
    nagata::ConservationReport cons = nagata::conservation_report(m, l);
    nagata::RuledClass gen = nagata::general_fibre(m, l);

    Json output;
    output["general_fibre"] = nagata::to_string(gen);
    output["conservation"] = nagata::json_of(cons);
    std::ostringstream table;
    table << "general fibre  " << nagata::to_string(gen) << '\n'
          << "conservation   " << (cons.conserved() ? "ok" : "BROKEN") << '\n';

    bool negative = !cons.conserved();
    if (doc.contains("cycle")) {
        nagata::CandidateCycle z = nagata::cycle_from_json(doc.at("cycle"), m);
        nagata::GoodnessReport good = nagata::check_good(m, l, z);
        output["goodness"] = nagata::json_of(good);
        table << "cycle          " << (good.good ? "good" : "not good") << '\n';
        for (const auto& f : good.failures) table << "  " << f << '\n';
        negative = negative || !good.good;
    }
    return emit(g, "mosaic-check", Json{{"file", path}}, output, table.str(), negative);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculus for divisor classes on blowups of rational surfaces"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    app.add_flag("--strict", g.strict, "Exit 1 on negative domain verdicts");
    app.add_flag("--verbose", g.verbose, "Instrumentation counters on stderr");
    app.add_option("--seed", g.seed, "Oracle seed")->envname("NAGATA_SEED");

    int code = 0;

    std::string profile_r;
    auto* profile = app.add_subcommand("profile", "Square-root profile and coverage of one r")->fallthrough();
    profile->add_option("r", profile_r, "Number of points")->required();
    profile->callback([&] { code = run_profile(g, profile_r); });

    std::string scan_lo, scan_hi, scan_cache;
    auto* scan = app.add_subcommand("scan", "Profiles for a range of r")->fallthrough();
    scan->add_option("r_lo", scan_lo)->required();
    scan->add_option("r_hi", scan_hi)->required();
    scan->add_option("--cache", scan_cache, "JSON-lines cache file");
    scan->callback([&] { code = run_scan(g, scan_lo, scan_hi, scan_cache); });

    std::string cr_class, cr_rule;
    long cr_s = 0;
    std::vector<std::size_t> cr_indices;
    auto* cremona = app.add_subcommand("cremona", "Apply one transformation rule")->fallthrough();
    cremona->add_option("class", cr_class, "Class string")->required();
    cremona->add_option("--rule", cr_rule, "1|2|3|4|elem")->required();
    cremona->add_option("--s", cr_s, "Rule parameter s");
    cremona->add_option("--indices", cr_indices,
                        "Centers (elem) or designated multiplicity entries (rules)")
        ->delimiter(',');
    cremona->callback([&] { code = run_cremona(g, cr_class, cr_rule, cr_s, cr_indices); });

    std::string red_class;
    auto* reduce = app.add_subcommand("reduce", "Cremona reduction to standard form")->fallthrough();
    reduce->add_option("class", red_class, "Plane class string")->required();
    reduce->callback([&] { code = run_reduce(g, red_class); });

    std::string nef_class;
    auto* nef = app.add_subcommand("nef", "Nef test for blowups of at most 8 points")->fallthrough();
    nef->add_option("class", nef_class, "Plane class string")->required();
    nef->callback([&] { code = run_nef(g, nef_class); });

    std::string h0_class;
    std::uint64_t h0_prime = nagata::kDefaultPrime;
    int h0_trials = 5;
    auto* h0 = app.add_subcommand("h0", "Generic dimension via the interpolation oracle")->fallthrough();
    h0->add_option("class", h0_class, "Plane class string")->required();
    h0->add_option("--prime", h0_prime, "Field characteristic");
    h0->add_option("--trials", h0_trials, "Random trials");
    h0->callback([&] { code = run_h0(g, h0_class, h0_prime, h0_trials); });

    std::string hb_input, hb_cache;
    std::uint64_t hb_prime = nagata::kDefaultPrime;
    int hb_trials = 5;
    auto* h0b = app.add_subcommand("h0-batch", "Oracle runs from a JSON-lines problem file")->fallthrough();
    h0b->add_option("input", hb_input, "JSON-lines problem file")->required();
    h0b->add_option("--cache", hb_cache, "JSON-lines result cache");
    h0b->add_option("--prime", hb_prime, "Default field characteristic");
    h0b->add_option("--trials", hb_trials, "Default trials");
    h0b->callback([&] { code = run_h0_batch(g, hb_input, hb_cache, hb_prime, hb_trials); });

    std::string tr_step, tr_r, tr_mu, tr_j;
    auto* trace = app.add_subcommand("trace", "Replay one construction step")->fallthrough();
    trace->add_option("step", tr_step, "step1..step5")->required();
    trace->add_option("r", tr_r)->required();
    trace->add_option("mu", tr_mu)->required();
    trace->add_option("j", tr_j)->required();
    trace->callback([&] { code = run_trace(g, tr_step, tr_r, tr_mu, tr_j); });

    std::string mc_file;
    auto* mc = app.add_subcommand("mosaic-check", "Validate a {mosaic, bundle, cycle} document")->fallthrough();
    mc->add_option("file", mc_file, "JSON document")->required();
    mc->callback([&] { code = run_mosaic_check(g, mc_file); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return code;
}
