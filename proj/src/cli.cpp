#include "btg/cli.hpp"

#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "btg/io.hpp"

namespace btg {

namespace {

using io::InputError;
using io::Json;

Json report(Json body) {
    body["schema"] = io::kSchemaVersion;
    return body;
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << Json{{"schema", io::kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

Valuation valuation_arg(const std::string& text) { return io::parse_valuation(io::parse_json(text, "--valuation")); }

void require_field(const Valuation& v, const GeneratorSet& s) {
    if (!(v.field() == s.field())) {
        throw InputError("--valuation: " + v.to_string() + " is not defined on " + s.field().to_string());
    }
}

// A matrix given as a JSON literal, or a word over the generators.
Mat2 matrix_arg(const std::string& text, const std::string& flag, const Field& f, const GeneratorSet* s) {
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') return io::parse_matrix(io::parse_json(text, flag), f, flag);
    if (!s) throw InputError(flag + ": words need --generators; pass a matrix as [[a, b], [c, d]]");
    try {
        return evaluate_word(*s, s->parse_word(text));
    } catch (const std::invalid_argument& e) {
        throw InputError(flag + ": " + e.what());
    }
}

GroupWord word_arg(const GeneratorSet& s, const std::string& text, const std::string& flag) {
    try {
        return s.parse_word(text);
    } catch (const std::invalid_argument& e) {
        throw InputError(flag + ": " + e.what());
    }
}

std::string text_table(const BallStats& st) {
    std::ostringstream os;
    std::size_t width = std::string("beta_n").size();
    for (auto x : st.sizes) width = std::max(width, std::to_string(x).size());
    os << "mode " << to_string(st.mode) << "\n";
    os << std::setw(3) << "n" << "  " << std::setw(static_cast<int>(width)) << "beta_n" << "  " << "beta_n^(1/n)\n";
    for (std::size_t n = 0; n < st.sizes.size(); ++n) {
        os << std::setw(3) << n << "  " << std::setw(static_cast<int>(width)) << st.sizes[n] << "  "
           << (n == 0 ? std::string("-") : st.rate_estimates[n - 1]) << "\n";
    }
    return os.str();
}

struct Options {
    std::string generators;
    std::string valuation;
    int depth = 12;
    long radius = 0;
    bool projective = false;
    std::string format = "json";
    int check_growth = 0;
    int trace_radius = 0;
    std::string word_a, word_b;
    bool gl = false;
    std::string query;
    std::string g, h, x, y;
    std::string modulus;
    std::string subgroup = "kernel";
};

int cmd_growth(const Options& o, std::ostream& out) {
    const GeneratorSet s = io::parse_generator_file(io::read_json_file(o.generators));
    const BallStats st = ball_sizes(s, o.radius, o.projective ? BallMode::PGL : BallMode::GL, BallLimits::from_environment());
    if (o.format == "text") {
        out << text_table(st);
    } else {
        out << io::dump(report(io::ball_stats_json(st)));
    }
    return kExitOk;
}

Json with_growth_check(const GeneratorSet& s, const WitnessReport& w, int k) {
    Json j = io::witness_json(s, w);
    if (k > 0) j["uf_check"] = io::uf_check_json(verify_uf_inequality(s, w, k, BallLimits::from_environment()));
    return j;
}

int cmd_witness(const Options& o, std::ostream& out) {
    const GeneratorSet s = io::parse_generator_file(io::read_json_file(o.generators));
    if (!o.valuation.empty()) {
        const Valuation v = valuation_arg(o.valuation);
        require_field(v, s);
        const WitnessResult r = uf_witness(s, v, o.depth);
        Json body{{"outcome", to_string(r.outcome)}};
        body["witness"] = r.report ? with_growth_check(s, *r.report, o.check_growth) : Json(nullptr);
        out << io::dump(report(body));
        return r.report ? kExitOk : kExitNoWitness;
    }
    const GlobalClassification all = classify_all(s, o.depth);
    Json outcomes = Json::array();
    for (const auto& r : all.reports) outcomes.push_back({{"valuation", io::to_json(r.valuation)}, {"outcome", to_string(r.outcome)}});
    Json body{{"outcomes", outcomes}};
    const WitnessReport* w = all.first_witness();
    body["outcome"] = w ? "witness" : "no-witness";
    body["witness"] = w ? with_growth_check(s, *w, o.check_growth) : Json(nullptr);
    body["diagnostic"] = all.diagnostic ? Json(*all.diagnostic) : Json(nullptr);
    out << io::dump(report(body));
    return w ? kExitOk : kExitNoWitness;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const GeneratorSet s = io::parse_generator_file(io::read_json_file(o.generators));
    GlobalClassification all;
    if (!o.valuation.empty()) {
        const Valuation v = valuation_arg(o.valuation);
        require_field(v, s);
        all.reports.push_back(classify(s, v, o.depth));
    } else {
        all = classify_all(s, o.depth);
    }
    Json reports = Json::array();
    for (const auto& r : all.reports) reports.push_back(io::classification_json(s, r));
    Json body{{"reports", reports}, {"field", io::to_json(s.field())}};
    body["diagnostic"] = all.diagnostic ? Json(*all.diagnostic) : Json(nullptr);
    if (o.trace_radius > 0) {
        std::vector<Valuation> vs;
        for (const auto& r : all.reports) vs.push_back(r.valuation);
        if (vs.empty() && s.field().is_rational()) {
            for (long p : {2L, 3L, 5L, 7L}) vs.push_back(Valuation::p_adic(p));
        }
        body["traces"] = io::trace_json(trace_diagnostics(s, o.trace_radius, vs));
    }
    out << io::dump(report(body));
    return all.first_witness() ? kExitOk : kExitNoWitness;
}

int cmd_certify(const Options& o, std::ostream& out) {
    const GeneratorSet s = io::parse_generator_file(io::read_json_file(o.generators));
    const GroupWord wa = word_arg(s, o.word_a, "--word-a");
    const GroupWord wb = word_arg(s, o.word_b, "--word-b");
    const auto mode = o.gl ? CompareMode::GL : CompareMode::PGL;
    const OracleResult r = oracle_free_semigroup(evaluate_word(s, wa), evaluate_word(s, wb), o.depth, mode);
    Json body{{"word_a", s.render(wa)},
              {"word_b", s.render(wb)},
              {"depth", o.depth},
              {"mode", o.gl ? "GL" : "PGL"},
              {"status", r.ok() ? "ok" : "collision"},
              {"words_checked", r.words_checked}};
    body["collision"] = r.collision ? Json{{"first", r.collision->first}, {"second", r.collision->second}} : Json(nullptr);
    out << io::dump(report(body));
    return r.ok() ? kExitOk : kExitCollision;
}

int cmd_tree(const Options& o, std::ostream& out) {
    const Valuation v = valuation_arg(o.valuation);
    const BruhatTitsTree tree(v);
    const Field f = v.field();
    std::optional<GeneratorSet> s;
    if (!o.generators.empty()) {
        s.emplace(io::parse_generator_file(io::read_json_file(o.generators)));
        require_field(v, *s);
    }
    const GeneratorSet* sp = s ? &*s : nullptr;
    auto need = [](const std::string& value, const char* flag) -> const std::string& {
        if (value.empty()) throw InputError(std::string("query needs ") + flag);
        return value;
    };
    auto mat = [&](const std::string& value, const char* flag) { return matrix_arg(need(value, flag), flag, f, sp); };
    auto vert = [&](const std::string& value, const char* flag) {
        if (value.empty()) return tree.base();
        return io::parse_vertex(io::parse_json(value, flag), tree, flag);
    };
    auto hyperbolic = [&](const Mat2& m, const char* flag) {
        if (!tree.is_hyperbolic(m)) throw InputError(std::string(flag) + ": element is not hyperbolic at " + v.to_string());
        return m;
    };

    Json body{{"query", o.query}, {"valuation", io::to_json(v)}};
    if (o.query == "vertex") {
        body["vertex"] = io::to_json(tree.vertex_from_matrix(mat(o.g, "--element")));
    } else if (o.query == "distance") {
        body["distance"] = tree.distance(vert(o.x, "--x"), vert(o.y, "--y"));
    } else if (o.query == "geodesic") {
        Json path = Json::array();
        for (const auto& p : tree.geodesic(vert(o.x, "--x"), vert(o.y, "--y"))) path.push_back(io::to_json(p));
        body["geodesic"] = path;
        body["distance"] = path.size() - 1;
    } else if (o.query == "act") {
        body["vertex"] = io::to_json(tree.act(mat(o.g, "--element"), vert(o.x, "--x")));
    } else if (o.query == "translation-length") {
        const Mat2 g = mat(o.g, "--element");
        body["translation_length"] = tree.translation_length(g);
        body["type"] = to_string(tree.classify(g));
        body["trace_valuation"] = io::to_json(val(trace(g), v));
        body["det_valuation"] = io::to_json(val(det(g), v));
    } else if (o.query == "axis") {
        const AxisData a = tree.axis(hyperbolic(mat(o.g, "--element"), "--element"));
        body["translation_length"] = a.translation_length;
        body["on_axis"] = io::to_json(a.on_axis);
        Json seg = Json::array();
        for (const auto& p : tree.geodesic(a.on_axis, tree.act(a.element, a.on_axis))) seg.push_back(io::to_json(p));
        body["fundamental_segment"] = seg;
    } else if (o.query == "project") {
        const Mat2 g = hyperbolic(mat(o.g, "--element"), "--element");
        const Vertex x = vert(o.x, "--x");
        const Vertex p = tree.project_to_axis(g, x);
        body["projection"] = io::to_json(p);
        body["distance_to_axis"] = tree.distance(x, p);
    } else if (o.query == "axis-equal") {
        body["axis_equal"] = tree.axis_equal(hyperbolic(mat(o.g, "--element"), "--element"), hyperbolic(mat(o.h, "--other"), "--other"));
    } else if (o.query == "bridge") {
        const Mat2 g = hyperbolic(mat(o.g, "--element"), "--element"), h = hyperbolic(mat(o.h, "--other"), "--other");
        if (tree.axis_equal(g, h)) throw InputError("bridge: the axes coincide");
        body["bridge"] = io::to_json(tree.bridge(g, h));
    }
    out << io::dump(report(body));
    return kExitOk;
}

int cmd_subgroup(const Options& o, std::ostream& out) {
    const GeneratorSet s = io::parse_generator_file(io::read_json_file(o.generators));
    FiniteImageSpec spec;
    if (spec.modulus.set_str(o.modulus, 10) != 0) throw InputError("--mod: not an integer: " + o.modulus);
    if (o.subgroup == "kernel") {
        spec.target = FiniteImageSpec::Target::Kernel;
    } else {
        const Json list = io::parse_json(o.subgroup, "--subgroup");
        if (!list.is_array() || list.empty()) {
            throw InputError("--subgroup: expected \"kernel\" or a nonempty array of matrices or words");
        }
        spec.target = FiniteImageSpec::Target::Elements;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string where = "--subgroup[" + std::to_string(i) + "]";
            spec.elements.push_back(list[i].is_string() ? matrix_arg(list[i].get<std::string>(), where, s.field(), &s)
                                                        : io::parse_matrix(list[i], s.field(), where));
        }
    }
    try {
        const SubgroupGenerators sg = subgroup_generators(s, spec, BallLimits::from_environment());
        out << io::dump(report(io::subgroup_json(s, sg, spec)));
    } catch (const FieldMismatch& e) {
        throw InputError(std::string("subgroup-gens: ") + e.what());
    }
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tree actions, free semigroups and word growth for subgroups of GL2", "btg"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "btg 0.1.0");
    app.footer("Environment: BTG_MAX_BALL caps the number of elements in a Cayley ball (default 10000000).");
    Options o;

    const auto depth_check = CLI::Range(1, 24);
    auto generators_opt = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--generators", o.generators, "Generator file (JSON)")->check(CLI::ExistingFile);
        if (required) opt->required();
    };

    auto* growth = app.add_subcommand("growth", "Exact ball sizes and growth-rate estimates");
    generators_opt(growth, true);
    growth->add_option("--radius", o.radius, "Ball radius N")->required()->check(CLI::Range(0L, 1000L));
    growth->add_flag("--projective", o.projective, "Count modulo scalars");
    growth->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));

    auto* witness = app.add_subcommand("witness", "Search for a free-semigroup pair of words of length <= 6");
    generators_opt(witness, true);
    witness->add_option("--valuation", o.valuation, "Valuation as JSON; default: all candidate places");
    witness->add_option("--depth", o.depth, "Oracle depth L")->check(depth_check);
    witness->add_option("--check-growth", o.check_growth, "Verify the ball inequality for k = 1..K")
        ->check(CLI::Range(0, 8));

    auto* cls = app.add_subcommand("classify", "Per-place classification over S and S^2");
    generators_opt(cls, true);
    cls->add_option("--valuation", o.valuation, "Restrict to one valuation (JSON)");
    cls->add_option("--depth", o.depth, "Oracle depth L")->check(depth_check);
    cls->add_option("--trace-radius", o.trace_radius, "Add trace diagnostics over the radius-R ball")
        ->check(CLI::Range(0, 6));

    auto* certify = app.add_subcommand("certify-free", "Check that two words generate a free semigroup to depth L");
    generators_opt(certify, true);
    certify->add_option("--word-a", o.word_a, "First word, e.g. t or a*t*a^-1")->required();
    certify->add_option("--word-b", o.word_b, "Second word")->required();
    certify->add_option("--depth", o.depth, "Oracle depth L")->check(depth_check);
    certify->add_flag("--gl", o.gl, "Compare exact matrices instead of classes modulo scalars");

    auto* tree = app.add_subcommand("tree", "Queries on the Bruhat-Tits tree of a valuation");
    tree->add_option("--valuation", o.valuation, "Valuation as JSON")->required();
    tree->add_option("--query", o.query, "Query")
        ->required()
        ->check(CLI::IsMember({"vertex", "distance", "geodesic", "act", "translation-length", "axis", "project",
                               "axis-equal", "bridge"}));
    generators_opt(tree, false);
    tree->add_option("--element", o.g, "Matrix [[a,b],[c,d]] or word over --generators");
    tree->add_option("--other", o.h, "Second matrix or word");
    tree->add_option("--x", o.x, "Vertex {\"a\":int,\"b\":element}; default: base vertex");
    tree->add_option("--y", o.y, "Second vertex; default: base vertex");

    auto* sub = app.add_subcommand("subgroup-gens", "Generators of a finite-index subgroup as short words");
    generators_opt(sub, true);
    sub->add_option("--mod", o.modulus, "Modulus q")->required();
    sub->add_option("--subgroup", o.subgroup, "\"kernel\" or a JSON array of matrices or words");

    for (auto* s : {growth, witness, cls, certify, tree, sub}) s->allow_extras(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*growth) return cmd_growth(o, out);
        if (*witness) return cmd_witness(o, out);
        if (*cls) return cmd_classify(o, out);
        if (*certify) return cmd_certify(o, out);
        if (*tree) return cmd_tree(o, out);
        if (*sub) return cmd_subgroup(o, out);
    } catch (const InputError& e) {
        print_error(err, "input", e.what());
        return kExitInput;
    } catch (const ResourceError& e) {
        print_error(err, "resource", e.what());
        return kExitInput;
    } catch (const LemmaContradiction& e) {
        print_error(err, "certification", e.what());
        return kExitCollision;
    } catch (const std::invalid_argument& e) {
        print_error(err, "input", e.what());
        return kExitInput;
    } catch (const std::domain_error& e) {
        print_error(err, "input", e.what());
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace btg
