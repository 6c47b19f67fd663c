#include "gradval/json_io.hpp"

#include "gradval/error.hpp"

#include <regex>

namespace gradval::io {

namespace {

[[noreturn]] void schema(std::string_view what, const std::string &detail) {
  fail(ErrorCode::SchemaError, std::string(what) + ": " + detail);
}

const json &require_array(const json &j, std::string_view what) {
  if (!j.is_array())
    schema(what, "expected an array");
  return j;
}

} // namespace

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    fail(ErrorCode::ParseError, "parse error at byte " + std::to_string(e.byte));
  }
}

const json &field(const json &obj, std::string_view name) {
  if (!obj.is_object())
    schema(name, "expected an enclosing object");
  auto it = obj.find(std::string(name));
  if (it == obj.end())
    schema(name, "missing field");
  return *it;
}

Int int_from(const json &j, std::string_view what) {
  if (j.is_number_integer())
    return Int(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned())
    return Int(std::to_string(j.get<unsigned long long>()));
  if (!j.is_string())
    schema(what, "expected an integer string");
  try {
    return parse_int(j.get<std::string>());
  } catch (const Error &e) {
    schema(what, e.what());
  }
}

Rational rational_from(const json &j, std::string_view what) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rational(int_from(j, what));
  if (!j.is_string())
    schema(what, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error &e) {
    schema(what, e.what());
  }
}

std::size_t index_from(const json &j, std::string_view what) {
  Int v = int_from(j, what);
  if (v < 0 || !v.fits_ulong_p())
    schema(what, "expected a nonnegative index");
  return v.get_ui();
}

json to_json(const Int &v) { return to_string(v); }
json to_json(const Rational &v) { return to_string(v); }

json to_json(const IntVector &v) {
  json out = json::array();
  for (const auto &x : v)
    out.push_back(to_string(x));
  return out;
}

json to_json(const RationalVector &v) {
  json out = json::array();
  for (const auto &x : v)
    out.push_back(to_string(x));
  return out;
}

IntVector int_vector_from(const json &j, std::string_view what) {
  IntVector out;
  for (const auto &x : require_array(j, what))
    out.push_back(int_from(x, what));
  return out;
}

RationalVector rational_vector_from(const json &j, std::string_view what) {
  RationalVector out;
  for (const auto &x : require_array(j, what))
    out.push_back(rational_from(x, what));
  return out;
}

ExactMatrix matrix_from(const json &j) {
  std::vector<IntVector> rows;
  for (const auto &row : require_array(j, "matrix"))
    rows.push_back(int_vector_from(row, "matrix row"));
  for (const auto &row : rows)
    if (row.size() != rows.front().size())
      schema("matrix", "rows have different lengths");
  return ExactMatrix::from_rows(rows);
}

json to_json(const ExactMatrix &m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    out.push_back(to_json(m.row(r)));
  return out;
}

ShapePtr shape_from(const json &blocks) {
  static const std::regex root(R"(sqrt\((\d+)\))");
  std::vector<BlockWeights> out;
  for (const auto &b : require_array(blocks, "blocks")) {
    const auto &w = require_array(field(b, "weights"), "weights");
    if (w.empty() || w.size() > 2 || w[0] != "1")
      schema("weights", "expected [\"1\"] or [\"1\", \"sqrt(d)\"]");
    BlockWeights bw;
    if (w.size() == 2) {
      std::smatch m;
      std::string text = w[1].is_string() ? w[1].get<std::string>() : std::string();
      if (!std::regex_match(text, m, root))
        schema("weights", "second weight must read sqrt(d)");
      bw.radicand = Int(m[1].str());
    }
    out.push_back(bw);
  }
  return GroupShape::make(std::move(out));
}

json shape_to_json(const GroupShape &shape) {
  json out = json::array();
  for (const auto &b : shape.blocks()) {
    json w = json::array({"1"});
    if (b.radicand != 0)
      w.push_back("sqrt(" + to_string(b.radicand) + ")");
    out.push_back({{"weights", w}});
  }
  return out;
}

OrderedGroupElement element_from(const ShapePtr &shape, const json &j) {
  require_array(j, "element");
  RationalVector coords;
  if (!j.empty() && j[0].is_array()) {
    if (j.size() != shape->rank())
      schema("element", "expected one list per block");
    for (std::size_t b = 0; b < j.size(); ++b) {
      auto part = rational_vector_from(j[b], "element block");
      if (part.size() != shape->block(b).width())
        schema("element", "block " + std::to_string(b + 1) + " has the wrong width");
      coords.insert(coords.end(), part.begin(), part.end());
    }
  } else {
    coords = rational_vector_from(j, "element");
  }
  if (coords.size() != shape->dimension())
    schema("element", "expected " + std::to_string(shape->dimension()) + " coordinates");
  return OrderedGroupElement(shape, std::move(coords));
}

json to_json(const OrderedGroupElement &g) { return to_json(g.coords()); }

namespace {

std::vector<OrderedGroupElement> elements_from(const ShapePtr &shape, const json &j) {
  std::vector<OrderedGroupElement> out;
  for (const auto &e : require_array(j, "generators"))
    out.push_back(element_from(shape, e));
  return out;
}

ShapePtr shape_of(const json &j, ShapePtr shape) {
  if (!shape)
    shape = shape_from(field(j, "blocks"));
  if (j.contains("rank") && int_from(j["rank"], "rank") != Int(std::to_string(shape->rank())))
    schema("rank", "does not match the number of blocks");
  return shape;
}

} // namespace

ValueGroup value_group_from(const json &j, ShapePtr shape) {
  shape = shape_of(j, std::move(shape));
  return make_value_group(shape, elements_from(shape, field(j, "generators")));
}

json to_json(const ValueGroup &g) {
  json gens = json::array();
  for (const auto &x : g.generators)
    gens.push_back(to_json(x));
  return {{"rank", g.shape->rank()}, {"blocks", shape_to_json(*g.shape)}, {"generators", gens}};
}

ValueSemigroup semigroup_from(const json &j, ShapePtr shape) {
  shape = shape_of(j, std::move(shape));
  return ValueSemigroup(shape, elements_from(shape, field(j, "generators")));
}

json to_json(const ValueSemigroup &s) {
  json gens = json::array();
  for (const auto &x : s.generators())
    gens.push_back(to_json(x));
  return {{"rank", s.shape()->rank()},
          {"blocks", shape_to_json(*s.shape())},
          {"generators", gens}};
}

AffineMonoid monoid_from(const json &j) {
  std::size_t dim = index_from(field(j, "dim"), "dim");
  std::vector<IntVector> gens;
  for (const auto &g : require_array(field(j, "generators"), "generators")) {
    gens.push_back(int_vector_from(g, "generator"));
    if (gens.back().size() != dim)
      schema("generators", "generator length differs from dim");
  }
  if (!j.contains("positivity_functional"))
    return AffineMonoid::with_derived_functional(dim, std::move(gens));
  return AffineMonoid(dim, std::move(gens),
                      rational_vector_from(j["positivity_functional"], "positivity_functional"));
}

json to_json(const AffineMonoid &m) {
  json gens = json::array();
  for (const auto &g : m.generators())
    gens.push_back(to_json(g));
  return {{"dim", m.dim()}, {"generators", gens}, {"positivity_functional", to_json(m.functional())}};
}

MonomialExtension extension_from(const json &j) {
  const auto &b = field(j, "blocks");
  std::vector<std::size_t> t, s;
  for (const auto &x : require_array(field(b, "t"), "t"))
    t.push_back(index_from(x, "t"));
  for (const auto &x : require_array(field(b, "s"), "s"))
    s.push_back(index_from(x, "s"));
  if (b.contains("r") && index_from(b["r"], "r") != t.size())
    schema("r", "does not match the length of t");
  BlockStructure blocks(t, s);

  ShapePtr shape = j.contains("value_blocks") ? shape_from(j["value_blocks"])
                                              : GroupShape::rational(t.size());
  ExactMatrix A = matrix_from(field(j, "A"));
  std::vector<OrderedGroupElement> ys;
  for (const auto &y : require_array(field(j, "y_values"), "y_values"))
    ys.push_back(element_from(shape, y));
  std::vector<bool> markers;
  if (j.contains("unit_markers"))
    for (const auto &m : require_array(j["unit_markers"], "unit_markers")) {
      if (!m.is_boolean())
        schema("unit_markers", "expected booleans");
      markers.push_back(m.get<bool>());
    }
  return make_extension(std::move(blocks), std::move(A), std::move(ys), std::move(markers));
}

json to_json(const MonomialExtension &me) {
  json ys = json::array();
  for (const auto &y : me.y_values)
    ys.push_back(to_json(y));
  json markers = json::array();
  for (bool m : me.unit_markers)
    markers.push_back(m);
  return {{"blocks", {{"r", me.blocks.rank()}, {"t", me.blocks.t()}, {"s", me.blocks.s()}}},
          {"A", to_json(me.A)},
          {"y_values", ys},
          {"value_blocks", shape_to_json(*me.shape)},
          {"unit_markers", markers}};
}

json to_json(const TransformStep &step) {
  return std::visit(
      [](const auto &s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, STransform>) {
          return {{"kind", "s_transform"}, {"i", s.i}, {"j", s.j}, {"k", s.k}, {"l", s.l}};
        } else if constexpr (std::is_same_v<T, RTransform>) {
          json factors = json::array();
          for (const auto &[var, c] : s.factors)
            factors.push_back({{"variable", var}, {"exponent", to_string(c)}});
          return {{"kind", "r_transform"}, {"row", s.row}, {"factors", factors}};
        } else {
          return {{"kind", "rescale"}, {"variable", s.variable}};
        }
      },
      step);
}

TransformStep step_from(const json &j) {
  const auto &kind = field(j, "kind");
  if (kind == "s_transform")
    return STransform{index_from(field(j, "i"), "i"), index_from(field(j, "j"), "j"),
                      index_from(field(j, "k"), "k"), index_from(field(j, "l"), "l")};
  if (kind == "r_transform") {
    RTransform r{index_from(field(j, "row"), "row"), {}};
    for (const auto &f : require_array(field(j, "factors"), "factors"))
      r.factors.emplace_back(index_from(field(f, "variable"), "variable"),
                             int_from(field(f, "exponent"), "exponent"));
    return r;
  }
  if (kind == "rescale")
    return Rescale{index_from(field(j, "variable"), "variable")};
  schema("kind", "unknown step kind");
}

json to_json(const MonomializationTrace &trace) {
  json steps = json::array();
  for (const auto &s : trace.steps)
    steps.push_back(to_json(s));
  return {{"initial", to_json(trace.initial)}, {"steps", steps}, {"final", to_json(trace.final)}};
}

MonomializationTrace trace_from(const json &j) {
  MonomializationTrace t{extension_from(field(j, "initial")), {}, extension_from(field(j, "final"))};
  for (const auto &s : require_array(field(j, "steps"), "steps"))
    t.steps.push_back(step_from(s));
  return t;
}

json to_json(const Diagnostic &d) {
  json out = {{"code", d.code}, {"message", d.message}};
  if (d.row)
    out["row"] = *d.row;
  if (d.col)
    out["col"] = *d.col;
  return out;
}

json to_json(const CosetLabel &label) {
  return {{"residues", to_json(label.residues)},
          {"moduli", to_json(label.moduli)},
          {"representative", to_json(label.representative)}};
}

ExtensionRecord record_from(const json &j) {
  auto opt_int = [&](const char *name) -> std::optional<Int> {
    if (!j.contains(name) || j[name].is_null())
      return std::nullopt;
    return int_from(j[name], name);
  };
  auto opt_rat = [&](const char *name) -> std::optional<Rational> {
    if (!j.contains(name) || j[name].is_null())
      return std::nullopt;
    return rational_from(j[name], name);
  };
  return ExtensionRecord(int_from(field(j, "N"), "N"), int_from(field(j, "e"), "e"),
                         int_from(field(j, "f"), "f"), int_from(field(j, "p"), "p"),
                         opt_int("delta"), opt_rat("d"), opt_rat("g"), opt_rat("r"));
}

json to_json(const ExtensionRecord &rec) {
  json out = {{"N", to_string(rec.degree())},
              {"e", to_string(rec.e())},
              {"f", to_string(rec.f())},
              {"p", to_string(rec.residue_char())},
              {"delta", to_string(rec.defect())}};
  if (rec.d())
    out["d"] = to_string(*rec.d());
  if (rec.g())
    out["g"] = to_string(*rec.g());
  if (rec.r())
    out["r"] = to_string(*rec.r());
  return out;
}

GradedModuleElement module_element_from(const std::shared_ptr<const GradedModule> &m,
                                        const json &terms) {
  GradedModuleElement::Terms out;
  const auto &shape = m->base().semigroup.shape();
  for (const auto &t : require_array(terms, "terms")) {
    auto sigma = int_vector_from(field(t, "sigma"), "sigma");
    auto idx = m->cosets().index_of(sigma);
    if (!idx)
      fail(ErrorCode::IndexError, "sigma is not a point of the parallelepiped");
    TermKey key{{*idx, index_from(field(t, "residue_index"), "residue_index")},
                element_from(shape, field(t, "gamma")).coords(),
                t.contains("phase") ? rational_from(t["phase"], "phase") : Rational(0)};
    auto coeff = rational_vector_from(field(t, "coeff"), "coeff");
    if (out.count(key))
      schema("terms", "repeated term");
    out.emplace(std::move(key), std::move(coeff));
  }
  return m->element(std::move(out));
}

json to_json(const GradedModuleElement &x) {
  json out = json::array();
  const auto &pts = x.module()->cosets().lambda.points;
  for (const auto &[k, c] : x.terms())
    out.push_back({{"sigma", to_json(pts[k.label.sigma])},
                   {"residue_index", k.label.residue_index},
                   {"gamma", to_json(k.gamma)},
                   {"coeff", to_json(c)},
                   {"phase", to_string(k.phase)}});
  return out;
}

} // namespace gradval::io
