// Command-line front end: instance validation, barcodes, fiber defects,
// theorem certificates and lemma suites.

#include "pqm/error.hpp"
#include "pqm/homology.hpp"
#include "pqm/instance.hpp"
#include "pqm/verifier.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace pqm;

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kInvalid = 2;

struct Options {
    std::uint32_t field = 2;
    std::optional<std::size_t> kmax;
    std::uint64_t seed = 0;
    std::string report;
    std::string scale;
    std::string input;
    std::string output;
    std::string suite = "all";
    std::size_t count = 1000;
    std::size_t max_arity = 0;
    bool json = false;
    GeneratorLimits limits;
};

std::string read_input(const std::string& path)
{
    std::ostringstream ss;
    if (path.empty() || path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::SchemaError, "cannot open '" + path + "'");
        ss << in.rdbuf();
    }
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::SchemaError, "cannot write '" + path + "'");
    out << text;
}

void report(const Options& o, const Json& j)
{
    if (!o.report.empty())
        write_file(o.report, j.dump(2) + "\n");
}

std::optional<TimeScale> scale_of(const Options& o, const InstanceDocument& doc)
{
    if (o.scale.empty())
        return doc.scale;
    const auto comma = o.scale.find(',');
    if (comma == std::string::npos)
        throw Error(ErrorCode::SchemaError, "--scale expects origin,step");
    TimeScale s{std::stod(o.scale.substr(0, comma)), std::stod(o.scale.substr(comma + 1))};
    if (!(s.step > 0))
        throw Error(ErrorCode::ValidationError, "--scale step must be positive");
    return s;
}

std::string timed(ExtNat v, const std::optional<TimeScale>& s)
{
    if (!s || v.is_infinite())
        return v.to_string();
    std::ostringstream ss;
    ss << v.to_string() << " (" << s->span(v.value()) << ")";
    return ss.str();
}

std::size_t kmax_for(const Options& o, const PersistencePoset& pp)
{
    return o.kmax.value_or(default_kmax(pp));
}

int cmd_validate(const Options& o)
{
    const auto doc = parse_instance(read_input(o.input));
    const auto& f = doc.map;
    std::cout << "valid instance: T=" << f.max_index() << ", X has " << tracks(f.source()).size() << " tracks, Y has "
              << tracks(f.target()).size() << " tracks\n";
    report(o, Json{{"valid", true}, {"T", f.max_index()}});
    return kOk;
}

int cmd_extend(const Options& o)
{
    const auto doc = parse_instance(read_input(o.input));
    Json j = Json::object();
    for (const auto& [label, pp] : {std::pair<std::string, const PersistencePoset*>{"X", &doc.map.source()},
                                    std::pair<std::string, const PersistencePoset*>{"Y", &doc.map.target()}}) {
        const auto orders = persistence_linear_extension(*pp);
        Json side = Json::array();
        for (std::size_t i = 0; i < orders.size(); ++i) {
            std::vector<std::string> names;
            std::cout << label << " slice " << i << ":";
            for (std::size_t k = 0; k < orders[i].size(); ++k) {
                names.push_back(pp->slice(i).name(orders[i][k]));
                std::cout << (k == 0 ? " " : " < ") << names.back();
            }
            std::cout << "\n";
            side.push_back(names);
        }
        j[label] = side;
    }
    report(o, j);
    return kOk;
}

Json barcodes_of(const std::string& label, const PersistencePoset& pp, const PrimeField& field, std::size_t kmax)
{
    const auto mods = homology_towers(order_complex_tower(pp), kmax, field, false);
    Json a = Json::array();
    for (std::size_t k = 0; k < mods.size(); ++k) {
        const auto b = barcode(mods[k]);
        std::cout << "H_" << k << "(" << label << "): " << to_string(b) << "\n";
        a.push_back(to_json(b));
    }
    return a;
}

int cmd_barcode(const Options& o)
{
    const PrimeField field(o.field);
    const auto text = read_input(o.input);
    Json j = Json::object();
    const auto doc = Json::parse(text, nullptr, false);
    if (!doc.is_discarded() && doc.is_object() && doc.value("format", "") == kPosetFormat) {
        const auto pp = parse_poset(text);
        j["poset"] = barcodes_of("P", pp, field, kmax_for(o, pp));
    } else {
        const auto inst = parse_instance(text);
        const auto& f = inst.map;
        const std::size_t k = o.kmax.value_or(std::max(default_kmax(f.source()), default_kmax(f.target())));
        j["X"] = barcodes_of("BX", f.source(), field, k);
        j["Y"] = barcodes_of("BY", f.target(), field, k);
    }
    j["field"] = o.field;
    report(o, j);
    return kOk;
}

int cmd_fibers(const Options& o)
{
    const PrimeField field(o.field);
    const auto doc = parse_instance(read_input(o.input));
    const auto& f = doc.map;
    const auto scale = scale_of(o, doc);
    const std::size_t k = o.kmax.value_or(std::max(default_kmax(f.source()), default_kmax(f.target())));
    Json rows = Json::array();
    std::cout << "track\tbirth\tepsilon\tper-degree\n";
    for (const auto& d : fiber_defects(f, field, k)) {
        std::cout << d.label << "\t" << d.track.birth << "\t" << timed(d.epsilon, scale) << "\t";
        Json per = Json::array();
        for (std::size_t i = 0; i < d.per_degree.size(); ++i) {
            std::cout << (i ? " " : "") << d.per_degree[i].to_string();
            per.push_back(to_json(d.per_degree[i]));
        }
        std::cout << "\n";
        rows.push_back(Json{{"label", d.label}, {"birth", d.track.birth}, {"epsilon", to_json(d.epsilon)},
                            {"per_degree", per}});
    }
    report(o, Json{{"field", o.field}, {"kmax", k}, {"tracks", rows}});
    return kOk;
}

int cmd_verify(const Options& o)
{
    const PrimeField field(o.field);
    const auto doc = parse_instance(read_input(o.input));
    const auto scale = scale_of(o, doc);
    const auto c = verify_theorem(doc.map, field, o.kmax);
    const Json j = certificate_to_json(c, scale);
    if (o.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "field F_" << c.field << ", degrees 0.." << c.kmax << "\n";
        std::cout << "m = " << c.m << ", epsilon = " << timed(c.epsilon, scale) << ", bound 4*m*epsilon = "
                  << timed(c.bound, scale) << "\n";
        for (const auto& t : c.tracks)
            std::cout << "  fiber " << t.label << ": " << timed(t.epsilon, scale) << "\n";
        for (std::size_t k = 0; k < c.distances.size(); ++k)
            std::cout << "  d_" << k << " = " << timed(c.distances[k], scale) << "   BX " << to_string(c.source_barcodes[k])
                      << "   BY " << to_string(c.target_barcodes[k]) << "\n";
        if (c.ratio)
            std::cout << "ratio max d / bound = " << *c.ratio << "\n";
        std::cout << "verdict: " << to_string(c.verdict)
                  << (c.verdict == Verdict::Vacuous ? " (some fiber has infinite defect)" : "") << "\n";
    }
    report(o, j);
    return c.verdict == Verdict::Violated ? kViolated : kOk;
}

int cmd_lemma(const Options& o)
{
    const PrimeField field(o.field);
    const bool all = o.suite == "all";
    if (!all && o.suite != "puncture" && o.suite != "join" && o.suite != "cylinder" && o.suite != "ses")
        throw Error(ErrorCode::SchemaError, "unknown suite '" + o.suite + "'");
    bool failed = false;
    Json j = Json::object();

    std::optional<InstanceDocument> doc;
    if (all || o.suite != "ses")
        doc = parse_instance(read_input(o.input));

    if (doc && (all || o.suite == "puncture")) {
        const auto& f = doc->map;
        const std::size_t k = o.kmax.value_or(std::max(default_kmax(f.source()), default_kmax(f.target())));
        const auto r = verify_chain_steps(f, field, k);
        std::cout << "puncture: " << r.steps << " chain steps, " << r.unmet << " with unmet hypothesis, "
                  << r.violations << " violations\n";
        for (const auto& m : r.failures)
            std::cout << "  " << m << "\n";
        failed |= r.violations > 0;
        j["puncture"] = Json{{"steps", r.steps}, {"unmet", r.unmet}, {"violations", r.violations}, {"failures", r.failures}};
    }
    if (doc && (all || o.suite == "join")) {
        const auto r = verify_join_acyclicity(doc->map.source(), doc->map.target(), field, o.kmax);
        std::cout << "join: defects X " << r.defect_a.to_string() << ", Y " << r.defect_b.to_string() << ", join "
                  << r.defect_join.to_string() << "; acyclicity " << (r.acyclicity_holds ? "holds" : "violated")
                  << ", product formula " << (r.kunneth_holds ? "holds" : "violated") << "\n";
        for (const auto& m : r.failures)
            std::cout << "  " << m << "\n";
        failed |= !r.acyclicity_holds || !r.kunneth_holds;
        j["join"] = Json{{"defect_x", to_json(r.defect_a)}, {"defect_y", to_json(r.defect_b)},
                         {"defect_join", to_json(r.defect_join)}, {"acyclicity", r.acyclicity_holds},
                         {"product_formula", r.kunneth_holds}, {"failures", r.failures}};
    }
    if (doc && (all || o.suite == "cylinder")) {
        const auto r = verify_cylinder_retraction(doc->map, field, o.kmax);
        Json d = Json::array();
        std::cout << "cylinder: distances";
        for (auto x : r.distances) {
            std::cout << " " << x.to_string();
            d.push_back(to_json(x));
        }
        std::cout << "; " << r.upsets_checked << " up-sets checked, " << r.upset_failures << " not acyclic\n";
        failed |= !r.retraction_holds || r.upset_failures > 0;
        j["cylinder"] = Json{{"distances", d}, {"upsets_checked", r.upsets_checked}, {"upset_failures", r.upset_failures}};
    }
    if (all || o.suite == "ses") {
        const auto r = verify_split_ses_properties(o.seed, o.count);
        std::cout << "ses: " << r.cases << " cases, " << r.violations << " violations\n";
        for (const auto& m : r.failures)
            std::cout << "  " << m << "\n";
        failed |= r.violations > 0;
        j["ses"] = Json{{"cases", r.cases}, {"violations", r.violations}, {"failures", r.failures}};
    }
    report(o, j);
    return failed ? kViolated : kOk;
}

int cmd_cover(const Options& o)
{
    const auto cover = parse_cover(read_input(o.input));
    const auto text = serialize_poset(cover_to_pposet(cover, o.max_arity));
    if (o.output.empty())
        std::cout << text;
    else
        write_file(o.output, text);
    return kOk;
}

int cmd_random(const Options& o)
{
    const auto text = serialize_instance(random_instance(o.seed, o.limits));
    if (o.output.empty())
        std::cout << text;
    else
        write_file(o.output, text);
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Persistent Quillen-McCord verifier"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--field", o.field, "prime field characteristic")->capture_default_str();
    app.add_option("--kmax", o.kmax, "top homological degree to check");
    app.add_option("--seed", o.seed, "random seed")->capture_default_str();
    app.add_option("--report", o.report, "write a machine-readable report to this path");
    app.add_option("--scale", o.scale, "index-to-time scale as origin,step");

    auto with_input = [&](CLI::App* sub) { sub->add_option("input", o.input, "input document ('-' for stdin)"); };

    auto* validate = app.add_subcommand("validate", "check an instance document");
    with_input(validate);
    auto* extend = app.add_subcommand("extend", "persistent linear extensions of X and Y");
    with_input(extend);
    auto* bar = app.add_subcommand("barcode", "barcodes of the order-complex towers");
    with_input(bar);
    auto* fibers = app.add_subcommand("fibers", "fiber defect table");
    with_input(fibers);
    auto* verify = app.add_subcommand("verify", "theorem certificate");
    with_input(verify);
    verify->add_flag("--json", o.json, "print the certificate as JSON");
    auto* lemma = app.add_subcommand("lemma", "lemma suites");
    with_input(lemma);
    lemma->add_option("--suite", o.suite, "puncture, join, cylinder, ses or all")->capture_default_str();
    lemma->add_option("--count", o.count, "cases for the ses suite")->capture_default_str();
    auto* cover = app.add_subcommand("cover", "intersection poset of a cover tower");
    with_input(cover);
    cover->add_option("--max-arity", o.max_arity, "largest intersection arity, 0 for all")->capture_default_str();
    cover->add_option("-o,--output", o.output, "output path");
    auto* random = app.add_subcommand("random", "random instance");
    random->add_option("--max-index", o.limits.max_index)->capture_default_str();
    random->add_option("--max-slice", o.limits.max_slice)->capture_default_str();
    random->add_option("--max-tracks", o.limits.max_tracks)->capture_default_str();
    random->add_flag("--shadow", o.limits.shadow, "make every fiber a cone");
    random->add_option("-o,--output", o.output, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*extend) return cmd_extend(o);
        if (*bar) return cmd_barcode(o);
        if (*fibers) return cmd_fibers(o);
        if (*verify) return cmd_verify(o);
        if (*lemma) return cmd_lemma(o);
        if (*cover) return cmd_cover(o);
        if (*random) return cmd_random(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
