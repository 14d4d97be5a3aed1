#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "btg/bt_tree.hpp"
#include "btg/growth.hpp"
#include "btg/matgroup.hpp"
#include "btg/pingpong.hpp"
#include "btg/witness.hpp"

namespace btg::io {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Malformed or ill-typed input. The message names the offending location.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses JSON text; syntax errors carry line, column and byte offset.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json_file(const std::string& path);

/// Pretty-printed with sorted keys and a trailing newline.
std::string dump(const Json& j);

Field parse_field(const Json& j);
/// Rationals as strings ("3/4") or integers. F_p(t) elements as integers,
/// text ("t^2 + 1", "(t + 1)/(t^2)") or {"num":[...],"den":[...]} with
/// coefficients listed from the constant term up.
FieldElement parse_element(const Json& j, const Field& f, const std::string& where = "element");
FieldElement parse_element_text(const std::string& text, const Field& f);
Mat2 parse_matrix(const Json& j, const Field& f, const std::string& where = "matrix");
/// {"kind":"p-adic","p":2}, {"kind":"poly","p":2,"pi":[0,1]} or {"kind":"infinity","p":2}.
Valuation parse_valuation(const Json& j);
/// {"a":int,"b":element}; b is reduced to canonical form.
Vertex parse_vertex(const Json& j, const BruhatTitsTree& tree, const std::string& where = "vertex");

/// {"schema":"1","field":{...},"names":[...],"generators":[...]}.
GeneratorSet parse_generator_file(const Json& j);

Json to_json(const Field& f);
Json to_json(const FieldElement& x);
Json to_json(const Mat2& m);
Json to_json(const Valuation& v);
Json to_json(const Vertex& x);
Json to_json(ValInt v);
Json to_json(const Bridge& b);
Json to_json(const Certificate& c);
Json to_json(const GeneratorSet& s);

Json witness_json(const GeneratorSet& s, const WitnessReport& w);
Json classification_json(const GeneratorSet& s, const ClassificationReport& r);
Json ball_stats_json(const BallStats& st);
Json uf_check_json(const UfCheck& c);
Json subgroup_json(const GeneratorSet& s, const SubgroupGenerators& sg, const FiniteImageSpec& spec);
Json trace_json(const TraceReport& r);

}  // namespace btg::io
