#include "tropmetz/cli.hpp"

#include "tropmetz/error.hpp"
#include "tropmetz/harness.hpp"
#include "tropmetz/json_io.hpp"
#include "tropmetz/pencil.hpp"
#include "tropmetz/transforms.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>

namespace tropmetz {

namespace {

struct Options {
    std::string file;
    std::string point;
    std::string kind;
    std::string edge;
    std::string out;
    std::vector<std::string> fixes;
    std::uint64_t seed = 0;
    std::size_t samples = 200;
    std::string box = "10";
    long denom = 64;
    std::string lo = "-10";
    std::string hi = "10";
    std::string step = "1";
    bool pipeline = false;
    bool affine = false;
    bool sparse = false;
    bool serial = false;
};

GameGraph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }

RationalVector real_point(const std::string& text) {
    const auto x = parse_point(text);
    if (!all_finite(x)) throw Error(ErrorCode::Malformed, "this command needs finite coordinates");
    return to_rational(x);
}

Json rational_vector_json(const RationalVector& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(rational_to_json(q));
    return out;
}

Json trop_vector_json(const TropVector& v) {
    Json out = Json::array();
    for (const auto& a : v) out.push_back(trop_to_json(a));
    return out;
}

Json report_json(const VerificationReport& r) {
    Json out{{"instance", r.instance},
             {"ok", r.ok()},
             {"samples", r.samples},
             {"forward_total", r.forward_total},
             {"forward_agree", r.forward_agree},
             {"backward_total", r.backward_total},
             {"backward_agree", r.backward_agree},
             {"counterexample", nullptr}};
    if (r.counterexample) {
        out["counterexample"] = Json{{"index", r.counterexample->index},
                                     {"x", rational_vector_json(r.counterexample->x)},
                                     {"subfixed", r.counterexample->subfixed},
                                     {"member", r.counterexample->member}};
    }
    return out;
}

// Fixed coordinates come as "<min vertex id>=<value>" or "<1-based index>=<value>".
std::map<std::size_t, Rational> parse_fixes(const GameGraph& g, const std::vector<std::string>& fixes) {
    std::map<std::size_t, Rational> out;
    const auto mins = g.min_vertices();
    for (const auto& f : fixes) {
        const auto eq = f.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::Malformed, "--fix expects id=value, got '" + f + "'");
        const auto key = f.substr(0, eq);
        std::optional<std::size_t> coord;
        for (std::size_t i = 0; i < mins.size(); ++i) {
            if (g.vertex(mins[i]).id == key) coord = i;
        }
        if (!coord && !key.empty() && std::all_of(key.begin(), key.end(), ::isdigit)) {
            const auto k = std::stoul(key);
            if (k >= 1 && k <= mins.size()) coord = k - 1;
        }
        if (!coord) throw Error(ErrorCode::Malformed, "unknown coordinate '" + key + "'");
        out[*coord] = parse_rational(f.substr(eq + 1));
    }
    return out;
}

int emit(const Options& o, const std::string& text, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return 0;
    }
    std::ofstream file(o.out);
    if (!file) throw Error(ErrorCode::Malformed, "cannot write '" + o.out + "'");
    file << text;
    return 0;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_validate(const Options& o, std::ostream& out) {
    const auto report = validate_graph(load_graph(o.file));
    emit(o, dump(validation_to_json(report)), out);
    return report.ok() ? 0 : 1;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const auto j = read_json_file(o.file);
    const auto x = real_point(o.point);
    RationalVector f;
    if (j.contains("matrices")) {
        const auto op = minmax_from_json(j);
        const auto report = check_stochastic(op);
        if (!report.ok()) throw Error(ErrorCode::NonStochastic, report.failures.front());
        f = minmax_eval(op, x);
    } else {
        f = EncodedOperator(graph_from_json(j)).eval(x);
    }
    return emit(o, dump(Json{{"x", rational_vector_json(x)}, {"F", rational_vector_json(f)}}), out);
}

int cmd_subfixed(const Options& o, std::ostream& out) {
    const EncodedOperator op(load_graph(o.file));
    const auto x = parse_point(o.point);
    const bool sub = op.subfixed(x);
    emit(o, dump(Json{{"x", trop_vector_json(x)}, {"F", trop_vector_json(op.eval(x))}, {"subfixed", sub}}), out);
    return 0;
}

int cmd_transform(const Options& o, std::ostream& out) {
    const auto g = load_graph(o.file);
    TransformResult result;
    if (o.kind == "zp") {
        result = {zwick_paterson(g), WitnessMap::identity(g.dimension(), "zp")};
    } else if (o.kind == "t1") {
        result = first_transformation(g);
    } else if (o.kind == "t2") {
        if (o.edge.empty()) throw Error(ErrorCode::Malformed, "transform t2 needs --edge");
        result = second_transformation(g, o.edge);
    } else if (o.kind == "pipeline") {
        result = pipeline(g);
    } else {
        throw Error(ErrorCode::Malformed, "unknown transformation '" + o.kind + "'");
    }
    return emit(o, dump(Json{{"graph", graph_to_json(result.graph)}, {"witness", witness_to_json(result.witness)}}), out);
}

int cmd_synthesize(const Options& o, std::ostream& out) {
    const auto g = load_graph(o.file);
    const std::size_t n = g.dimension();
    MetzlerPencil cone;
    Json witness = nullptr;
    if (o.pipeline) {
        const auto result = pipeline(g);
        cone = synthesize_cone(result.graph);
        witness = witness_to_json(result.witness);
    } else {
        cone = synthesize_cone(g);
    }
    if (o.affine) {
        if (!witness.is_null()) witness["affine"] = true;
        return emit(o, dump(pencil_to_json(affine_envelope(cone), n, witness, o.sparse)), out);
    }
    return emit(o, dump(pencil_to_json(cone, n, witness, o.sparse)), out);
}

int cmd_member(const Options& o, std::ostream& out) {
    const auto pp = pencil_from_json(read_json_file(o.file));
    const auto x = parse_point(o.point);
    const bool member = pencil_member(pp.pencil, x);
    emit(o, dump(Json{{"x", trop_vector_json(x)}, {"member", member}}), out);
    return 0;
}

int cmd_lift(const Options& o, std::ostream& out) {
    const auto g = load_graph(o.file);
    const EncodedOperator op(g);
    const auto pp = realize_graph(g);
    const auto x = real_point(o.point);
    const auto full = projected_lift(pp, to_trop(x));
    Json j{{"x", rational_vector_json(x)}, {"subfixed", op.subfixed(x)}, {"lift", nullptr}, {"member", false}};
    if (full) {
        j["lift"] = trop_vector_json(*full);
        j["member"] = pencil_member(pp.pencil, *full);
    }
    return emit(o, dump(j), out);
}

SampleConfig sample_config(const Options& o) {
    SampleConfig c;
    c.seed = o.seed;
    c.samples = o.samples;
    c.box = parse_rational(o.box);
    c.denom = o.denom;
    if (sgn(c.box) < 0 || c.denom < 1) throw Error(ErrorCode::Malformed, "--box must be >= 0 and --denom >= 1");
    return c;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const auto g = load_graph(o.file);
    const EncodedOperator op(g);
    const auto pp = realize_graph(g);
    const auto config = sample_config(o);
    auto report = o.serial ? verify_projected(op, pp, config) : verify_projected_parallel(op, pp, config);
    report.instance = o.file;
    emit(o, dump(report_json(report)), out);
    return report.ok() ? 0 : 1;
}

int cmd_section(const Options& o, std::ostream& out) {
    const EncodedOperator op(load_graph(o.file));
    SectionConfig c;
    c.fixed = parse_fixes(op.graph(), o.fixes);
    c.lo = parse_rational(o.lo);
    c.hi = parse_rational(o.hi);
    c.step = parse_rational(o.step);
    return emit(o, section_csv(section_parallel(op, c)), out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tropical Metzler spectrahedra from game graphs", "tropmetz"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--seed", o.seed, "sampling seed");
    app.add_option("--samples", o.samples, "number of sampled points");
    app.add_option("--box", o.box, "sampling box half-width (rational)");
    app.add_option("--denom", o.denom, "denominator bound of sampled rationals");
    app.add_option("--out", o.out, "write the result to a file");

    auto graph_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "input JSON")->required(); };
    auto point_arg = [&](CLI::App* sub) {
        sub->add_option("--x", o.point, "point, e.g. --x=0,1/2,-inf")->required()->allow_extra_args(false);
    };

    auto* validate = app.add_subcommand("validate", "check the graph assumptions");
    graph_arg(validate);
    auto* eval = app.add_subcommand("eval", "evaluate the encoded (or min-max) operator");
    graph_arg(eval);
    point_arg(eval);
    auto* subfixed = app.add_subcommand("subfixed", "test x <= F(x)");
    graph_arg(subfixed);
    point_arg(subfixed);
    auto* transform = app.add_subcommand("transform", "zp | t1 | t2 | pipeline");
    transform->add_option("kind", o.kind)->required();
    graph_arg(transform);
    transform->add_option("--edge", o.edge, "edge id for t2");
    auto* synthesize = app.add_subcommand("synthesize", "Metzler pencil of a compliant graph");
    graph_arg(synthesize);
    synthesize->add_flag("--pipeline", o.pipeline, "run the transformation pipeline first");
    synthesize->add_flag("--affine", o.affine, "add the affine envelope");
    synthesize->add_flag("--sparse", o.sparse, "list nonzero entries instead of dense matrices");
    auto* member = app.add_subcommand("member", "membership in a pencil");
    graph_arg(member);
    point_arg(member);
    auto* lift = app.add_subcommand("lift", "witness lift of a point through the full construction");
    graph_arg(lift);
    point_arg(lift);
    auto* verify = app.add_subcommand("verify", "sampled equivalence of x <= F(x) and lifted membership");
    graph_arg(verify);
    verify->add_flag("--serial", o.serial, "use the serial kernel");
    auto* sec = app.add_subcommand("section", "CSV membership grid of a two-dimensional section");
    graph_arg(sec);
    sec->add_option("--fix", o.fixes, "pinned coordinate id=value (repeatable)");
    sec->add_option("--lo", o.lo);
    sec->add_option("--hi", o.hi);
    sec->add_option("--step", o.step);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(o, out);
        if (eval->parsed()) return cmd_eval(o, out);
        if (subfixed->parsed()) return cmd_subfixed(o, out);
        if (transform->parsed()) return cmd_transform(o, out);
        if (synthesize->parsed()) return cmd_synthesize(o, out);
        if (member->parsed()) return cmd_member(o, out);
        if (lift->parsed()) return cmd_lift(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (sec->parsed()) return cmd_section(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::Malformed ? 2 : 1;
    } catch (const nlohmann::json::exception& e) {
        err << "error: Malformed: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace tropmetz
