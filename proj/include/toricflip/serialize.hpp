#pragma once

#include <string>

#include "json.hpp"
#include "toricflip/blowup.hpp"
#include "toricflip/reduction.hpp"

namespace toricflip {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
Json integer_json(const Integer& x);
Integer integer_from_json(const Json& j);

/// Germ descriptor: family, r, weights, equation ([exponents, numerator, denominator] triples), base_var.
Json germ_to_json(const HypersurfaceGerm& g);
/// Accepts the full descriptor, or for xy_t / xyz_t / moderate_binomial / smooth
/// just the family with r, a and n.
HypersurfaceGerm germ_from_json(const Json& j);

Json class_to_json(const GermClass& c);
Json step_to_json(const BlowupStep& s);
Json tree_to_json(const ResolutionTree& t);
Json normalization_to_json(const NormalizationResult& n);
Json triangulation_to_json(const Triangulation& t, const FiberCertificate& cert);
Json plan_to_json(const ReductionPlan& p);

/// One node per germ and one box per blow-up; each germ -> blow-up edge carries the discrepancy.
std::string tree_to_dot(const ResolutionTree& t);

}  // namespace toricflip
