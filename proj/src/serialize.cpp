#include "toricflip/serialize.hpp"

#include <limits>
#include <sstream>

#include "toricflip/error.hpp"

namespace toricflip {

namespace {

std::string origin_name(OriginKind k) {
  switch (k) {
    case OriginKind::Absent: return "absent";
    case OriginKind::Smooth: return "smooth";
    case OriginKind::Singular: return "singular";
  }
  return "unknown";
}

Json vector_json(std::span<const Integer> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json poly_json(const SparsePoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms())
    out.push_back(Json::array({Json(e), integer_json(c.get_num()), integer_json(c.get_den())}));
  return out;
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("germ descriptor is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("bad integer string '" + j.get<std::string>() + "'");
    return x;
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

Json germ_to_json(const HypersurfaceGerm& g) {
  Json j;
  j["family"] = std::string(family_name(g.family()));
  j["r"] = g.ambient().order();
  j["weights"] = g.ambient().weights();
  j["equation"] = poly_json(g.equation());
  j["base_var"] = g.base_var();
  return j;
}

HypersurfaceGerm germ_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("germ descriptor must be a JSON object");
  const Family family = parse_family(field<std::string>(j, "family"));
  if (!j.contains("equation")) {
    const auto r = j.contains("r") ? field<std::int64_t>(j, "r") : 1;
    const auto a = j.contains("a") ? field<std::int64_t>(j, "a") : (r > 1 ? 1 : 0);
    switch (family) {
      case Family::XyzT: return HypersurfaceGerm::xyz_t();
      case Family::XyT: return HypersurfaceGerm::xy_t(r, a);
      case Family::Smooth: return HypersurfaceGerm::smooth();
      case Family::ModerateBinomial:
        return HypersurfaceGerm::moderate_binomial(r, a, static_cast<int>(field<std::int64_t>(j, "n")));
      default: throw InvalidInput("family " + std::string(family_name(family)) + " needs an explicit equation");
    }
  }
  const auto r = field<std::int64_t>(j, "r");
  const auto weights = field<std::vector<std::int64_t>>(j, "weights");
  const auto base = field<std::size_t>(j, "base_var");
  const Json& eq = j.at("equation");
  if (!eq.is_array()) throw InvalidInput("equation must be a list of [exponents, numerator, denominator]");
  SparsePoly F(4);
  for (const auto& term : eq) {
    if (!term.is_array() || term.size() != 3) throw InvalidInput("equation term must be [exponents, numerator, denominator]");
    Exponent e;
    try {
      e = term[0].get<Exponent>();
    } catch (const nlohmann::json::exception& ex) {
      throw InvalidInput(std::string("bad exponent vector: ") + ex.what());
    }
    Integer num = integer_from_json(term[1]), den = integer_from_json(term[2]);
    if (den == 0) throw InvalidInput("zero denominator in equation");
    Rational c(num, den);
    c.canonicalize();
    F.add_term(e, c);
  }
  return HypersurfaceGerm(QuotientGerm(r, weights), F, base, family);
}

Json class_to_json(const GermClass& c) {
  Json j;
  j["case"] = std::string(case_name(c.case_label));
  j["index"] = c.index;
  j["moderate"] = c.moderate ? Json(std::string(moderate_name(*c.moderate))) : Json(nullptr);
  if (c.a) j["a"] = *c.a;
  if (c.n) j["n"] = *c.n;
  if (c.weierstrass_degree) j["weierstrass_degree"] = *c.weierstrass_degree;
  if (c.f) j["f"] = c.f->to_string({"Z", "t"});
  if (c.case_label == CaseLabel::Gorenstein) {
    j["du_val"] = c.du_val_rank ? Json("A_" + std::to_string(*c.du_val_rank)) : Json(nullptr);
    j["du_val_verified"] = c.du_val_verified;
  }
  j["summary"] = c.summary();
  return j;
}

Json step_to_json(const BlowupStep& s) {
  Json j;
  j["center"] = class_to_json(s.center_class);
  j["weights"] = vector_json(s.weights);
  j["denominator"] = s.denominator;
  j["equation_weight"] = to_string(s.equation_weight);
  j["discrepancy"] = to_string(s.discrepancy);
  j["fiber_mult"] = integer_json(s.fiber_mult);
  Json charts = Json::array();
  for (const auto& ch : s.charts) {
    Json c;
    c["exceptional"] = ch.exceptional;
    c["group"] = ch.group.to_string();
    c["proper_transform"] = ch.proper_transform.to_string({"x0", "x1", "x2", "x3"});
    c["base_monomial"] = ch.base_monomial;
    c["origin"] = origin_name(ch.origin);
    c["class"] = ch.germ_class ? class_to_json(*ch.germ_class) : Json(nullptr);
    charts.push_back(std::move(c));
  }
  j["charts"] = std::move(charts);
  Json sing = Json::array();
  for (auto k : s.singular_charts()) sing.push_back(k);
  j["singular_charts"] = std::move(sing);
  return j;
}

Json tree_to_json(const ResolutionTree& t) {
  Json j;
  j["root"] = germ_to_json(t.root().germ);
  j["blowups"] = t.blowup_count();
  Json nodes = Json::array();
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    Json node;
    node["id"] = i;
    node["depth"] = n.depth;
    node["class"] = class_to_json(n.germ_class);
    node["germ"] = germ_to_json(n.germ);
    node["children"] = n.children;
    node["step"] = n.step ? step_to_json(*n.step) : Json(nullptr);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

Json normalization_to_json(const NormalizationResult& n) {
  Json j;
  j["d"] = integer_json(n.d);
  j["n"] = vector_json(n.n);
  j["components"] = integer_json(n.components);
  j["multiplicity"] = integer_json(n.cone.multiplicity());
  j["denominator"] = integer_json(n.cone.denominator());
  Json gens = Json::array();
  for (const auto& g : n.cone.generators()) gens.push_back(vector_json(g));
  j["generators"] = std::move(gens);
  j["u_height"] = vector_json(n.u_height);
  j["formula_multiplicity"] = integer_json(n.formula_cone.multiplicity());
  j["matches_formula"] = n.matches_formula;
  return j;
}

Json triangulation_to_json(const Triangulation& t, const FiberCertificate& cert) {
  Json j;
  j["denominator"] = integer_json(t.parent.denominator());
  Json cones = Json::array();
  for (const auto& c : t.cones) {
    Json rays = Json::array();
    for (const auto& r : c.rays()) rays.push_back(vector_json(r));
    cones.push_back(std::move(rays));
  }
  j["cones"] = std::move(cones);
  j["certificate"] = {{"all_unimodular", cert.all_unimodular},
                      {"all_rays_height_one", cert.all_rays_height_one},
                      {"volume_matches", cert.volume_matches},
                      {"ok", cert.ok()}};
  return j;
}

Json plan_to_json(const ReductionPlan& p) {
  Json j;
  j["source"] = class_to_json(p.source_class);
  j["d"] = integer_json(p.branches.d);
  j["e"] = integer_json(p.normalization.components);
  j["orders"] = vector_json(p.branches.orders);
  Json segs = Json::array();
  for (const auto& s : p.branches.newton.lower_hull) {
    Json roots = Json::array();
    for (const auto& r : s.face_roots) roots.push_back({to_string(r.value), r.multiplicity});
    segs.push_back({{"from", {s.i1, s.j1}},
                    {"to", {s.i2, s.j2}},
                    {"slope", to_string(s.slope)},
                    {"roots", s.root_count},
                    {"lattice_length", s.lattice_length},
                    {"face_roots", roots},
                    {"face_split", s.face_split}});
  }
  j["newton"] = std::move(segs);
  Json germs = Json::array();
  for (const auto& g : p.moderate_germs) germs.push_back(germ_to_json(g));
  j["moderate_germs"] = std::move(germs);
  j["normalization"] = normalization_to_json(p.normalization);
  j["d_eff"] = integer_json(p.d_eff);
  if (p.triangulation && p.certificate) {
    j["triangulation"] = triangulation_to_json(*p.triangulation, *p.certificate);
    j["certificates"] = {{"reduced_fiber", p.certificate->ok()}};
  } else {
    j["triangulation"] = nullptr;
    j["certificates"] = {{"reduced_fiber", nullptr}};
  }
  return j;
}

std::string tree_to_dot(const ResolutionTree& t) {
  std::ostringstream os;
  os << "digraph resolution {\n";
  os << "  node [shape=ellipse];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << t.nodes[i].germ_class.summary() << "\"];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    if (!n.step) continue;
    os << "  e" << i << " [shape=box,label=\"blow-up (1/" << n.step->denominator << ")" << to_string(n.step->weights)
       << "\"];\n";
    os << "  n" << i << " -> e" << i << " [label=\"" << to_string(n.step->discrepancy) << "\"];\n";
    for (auto c : n.children) os << "  e" << i << " -> n" << c << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace toricflip
