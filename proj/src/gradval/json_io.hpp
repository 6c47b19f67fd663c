#pragma once

#include "gradval/affine_monoids.hpp"
#include "gradval/graded_algebra.hpp"
#include "gradval/monomialization.hpp"
#include "gradval/ramification.hpp"
#include "gradval/value_semigroups.hpp"

#include <json.hpp>

namespace gradval::io {

using json = nlohmann::json;

/// Parses text; throws ParseError carrying the byte offset.
json parse(std::string_view text);

Int int_from(const json &j, std::string_view what);
Rational rational_from(const json &j, std::string_view what);
std::size_t index_from(const json &j, std::string_view what);
const json &field(const json &obj, std::string_view name);

json to_json(const Int &v);
json to_json(const Rational &v);
json to_json(const IntVector &v);
json to_json(const RationalVector &v);

IntVector int_vector_from(const json &j, std::string_view what);
RationalVector rational_vector_from(const json &j, std::string_view what);

ExactMatrix matrix_from(const json &j);
json to_json(const ExactMatrix &m);

ShapePtr shape_from(const json &blocks);
json shape_to_json(const GroupShape &shape);

/// Flat list of rationals in block order, or one list per block.
OrderedGroupElement element_from(const ShapePtr &shape, const json &j);
json to_json(const OrderedGroupElement &g);

/// {"rank", "blocks", "generators"}; a given shape takes precedence over
/// the "blocks" field.
ValueGroup value_group_from(const json &j, ShapePtr shape = nullptr);
json to_json(const ValueGroup &g);

ValueSemigroup semigroup_from(const json &j, ShapePtr shape = nullptr);
json to_json(const ValueSemigroup &s);

AffineMonoid monoid_from(const json &j);
json to_json(const AffineMonoid &m);

MonomialExtension extension_from(const json &j);
json to_json(const MonomialExtension &me);

json to_json(const TransformStep &step);
TransformStep step_from(const json &j);
json to_json(const MonomializationTrace &trace);
MonomializationTrace trace_from(const json &j);

json to_json(const Diagnostic &d);
json to_json(const CosetLabel &label);

ExtensionRecord record_from(const json &j);
json to_json(const ExtensionRecord &rec);

GradedModuleElement module_element_from(const std::shared_ptr<const GradedModule> &m,
                                        const json &terms);
json to_json(const GradedModuleElement &x);

} // namespace gradval::io
