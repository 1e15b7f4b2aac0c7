#include "toricflip/cli.hpp"

#include <atomic>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "toricflip/error.hpp"

namespace toricflip {

namespace {

template <typename T>
std::optional<T> optional_field(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad job field '") + key + "': " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

bool has_germ(const JobSpec& job) { return job.germ || job.file || job.family; }

HypersurfaceGerm germ_of(const JobSpec& job) {
  if (job.germ) return germ_from_json(*job.germ);
  if (job.file) return germ_from_json(read_json_file(*job.file));
  if (!job.family) throw InvalidInput("no germ given: use --family or --file");
  Json j;
  j["family"] = *job.family;
  if (job.r) j["r"] = *job.r;
  if (job.a) j["a"] = *job.a;
  if (!job.n.empty()) j["n"] = job.n.front();
  const Family f = parse_family(*job.family);
  if ((f == Family::XyT || f == Family::ModerateBinomial) && !job.r) throw InvalidInput("--r is required for this family");
  if (f == Family::ModerateBinomial && job.n.empty()) throw InvalidInput("--n is required for moderate_binomial");
  return germ_from_json(j);
}

std::string pick_format(const JobSpec& job, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = job.format.empty() ? fallback : job.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw InvalidInput("format '" + f + "' is not available for " + job.command);
}

std::string join(const std::vector<Rational>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + to_string(xs[i]);
  return s;
}

std::string step_line(const BlowupStep& s) {
  return "discrepancy=" + to_string(s.discrepancy) + " fiber_mult=" + to_string(s.fiber_mult);
}

std::string blowup_table(const BlowupStep& s) {
  std::ostringstream os;
  os << "center: " << s.center_class.summary() << "\n";
  os << "weights: (1/" << s.denominator << ")" << to_string(s.weights) << " " << step_line(s) << "\n";
  os << "chart\tgroup\torigin\tclass\n";
  for (const auto& ch : s.charts) {
    os << ch.exceptional << "\t" << ch.group.to_string() << "\t";
    os << (ch.origin == OriginKind::Absent ? "absent" : ch.origin == OriginKind::Smooth ? "smooth" : "singular");
    os << "\t" << (ch.germ_class ? ch.germ_class->summary() : "-") << "\n";
  }
  return os.str();
}

std::string tree_table(const ResolutionTree& t) {
  std::ostringstream os;
  os << "blowups: " << t.blowup_count() << "\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    os << std::string(2 * n.depth, ' ') << "n" << i << " " << n.germ_class.summary();
    if (n.step) os << "  " << step_line(*n.step);
    os << "\n";
  }
  return os.str();
}

std::string vector_text(const std::vector<Integer>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

Json reduce_parameters(const JobSpec& job, std::string* table) {
  if (!job.d || job.n.empty()) throw InvalidInput("reduce needs a 2.7.3.1 germ (--file) or --d with --n");
  std::vector<Integer> n;
  for (auto x : job.n) n.emplace_back(static_cast<long>(x));
  const Integer d(static_cast<long>(*job.d));
  NormalizationResult norm = normalization_components(d, n);
  Integer d_eff = d;
  for (const auto& x : n) d_eff = lcm(d_eff, x);
  Json j;
  j["d"] = integer_json(d);
  j["e"] = integer_json(norm.components);
  j["normalization"] = normalization_to_json(norm);
  j["d_eff"] = integer_json(d_eff);
  std::ostringstream os;
  os << "d: " << d << "\ne: " << norm.components << "\nmultiplicity: " << norm.cone.multiplicity()
     << "\nmatches 1/d(n): " << (norm.matches_formula ? "yes" : "no") << "\nd_eff: " << d_eff << "\n";
  if (n.size() <= 3) {
    NormalizationResult reduced = normalization_components(d_eff, n);
    Triangulation tri = semistable_resolve_component(reduced.cone, reduced.u_height);
    FiberCertificate cert = certify_reduced_fiber(tri, reduced.u_height);
    j["triangulation"] = triangulation_to_json(tri, cert);
    os << "cones: " << tri.cones.size() << "\nreduced fibre certificate: " << (cert.ok() ? "ok" : "FAILED") << "\n";
  } else {
    j["triangulation"] = nullptr;
  }
  *table = os.str();
  return j;
}

std::string plan_table(const ReductionPlan& p) {
  std::ostringstream os;
  os << "source: " << p.source_class.summary() << "\n";
  os << "d: " << p.branches.d << "\ne: " << p.normalization.components << "\norders: " << vector_text(p.branches.orders)
     << "\n";
  for (const auto& g : p.moderate_germs) os << "moderate: " << classify(g).summary() << "  " << g.equation_string() << "\n";
  if (p.certificate) os << "reduced fibre certificate: " << (p.certificate->ok() ? "ok" : "FAILED") << "\n";
  return os.str();
}

void emit(const JobSpec& job, std::ostream& out, const std::string& text) {
  if (!job.out) {
    out << text;
    return;
  }
  std::ofstream f(*job.out);
  if (!f) throw InvalidInput("cannot write '" + *job.out + "'");
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string execute(const JobSpec& job) {
  const std::string& cmd = job.command;
  if (cmd == "classify") {
    const auto fmt = pick_format(job, "json", {"json", "table"});
    GermClass c = classify(germ_of(job));
    return fmt == "json" ? dump(class_to_json(c)) : c.summary() + "\n";
  }
  if (cmd == "blowup") {
    const auto fmt = pick_format(job, "json", {"json", "table"});
    BlowupStep s = weighted_blowup(germ_of(job));
    return fmt == "json" ? dump(step_to_json(s)) : blowup_table(s);
  }
  if (cmd == "resolve") {
    const auto fmt = pick_format(job, "json", {"json", "dot", "table"});
    ResolutionTree t = resolve(germ_of(job));
    if (fmt == "json") return dump(tree_to_json(t));
    return fmt == "dot" ? tree_to_dot(t) : tree_table(t);
  }
  if (cmd == "reduce") {
    const auto fmt = pick_format(job, "json", {"json", "table"});
    if (has_germ(job)) {
      ReductionPlan p = moderate_model(germ_of(job));
      return fmt == "json" ? dump(plan_to_json(p)) : plan_table(p);
    }
    std::string table;
    Json j = reduce_parameters(job, &table);
    return fmt == "json" ? dump(j) : table;
  }
  if (cmd == "hj") {
    const auto fmt = pick_format(job, "table", {"json", "table"});
    if (!job.r || !job.a) throw InvalidInput("hj needs --r and --a");
    SurfaceChain chain = hj_resolve_surface(*job.r, *job.a);
    IntVector b;
    for (const auto& s : chain.self_intersections) b.push_back(-s);
    if (fmt == "table") return vector_text(b) + "\n";
    Json j;
    j["r"] = *job.r;
    j["a"] = *job.a;
    j["continued_fraction"] = Json::array();
    for (const auto& x : b) j["continued_fraction"].push_back(integer_json(x));
    j["self_intersections"] = Json::array();
    for (const auto& x : chain.self_intersections) j["self_intersections"].push_back(integer_json(x));
    j["determinant"] = integer_json(determinant(chain.intersection_matrix));
    j["negative_definite"] = is_negative_definite(chain.intersection_matrix);
    return dump(j);
  }
  if (cmd == "scan") {
    const auto fmt = pick_format(job, "table", {"json", "table"});
    if (!job.max_r) throw InvalidInput("scan needs --max-r");
    if (*job.max_r < 2) throw InvalidInput("--max-r must be at least 2");
    auto rows = scan(*job.max_r, job.n, job.workers);
    if (fmt == "table") return scan_table(rows);
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json discs = Json::array();
      for (const auto& d : r.discrepancies) discs.push_back(to_string(d));
      arr.push_back({{"family", r.family},
                     {"r", r.r},
                     {"a", r.a},
                     {"n", r.n},
                     {"blowups", r.blowups},
                     {"depth", r.depth},
                     {"discrepancies", discs},
                     {"terminal", r.terminal},
                     {"semistable", r.semistable},
                     {"leaves_smooth", r.leaves_smooth},
                     {"certified", r.certified()}});
    }
    return dump(arr);
  }
  throw InvalidInput("unknown command '" + cmd + "'");
}

}  // namespace

JobSpec job_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("job file must hold a JSON object");
  JobSpec job;
  auto cmd = optional_field<std::string>(j, "command");
  if (!cmd) throw InvalidInput("job file is missing 'command'");
  job.command = *cmd;
  job.family = optional_field<std::string>(j, "family");
  job.r = optional_field<std::int64_t>(j, "r");
  job.a = optional_field<std::int64_t>(j, "a");
  job.d = optional_field<std::int64_t>(j, "d");
  job.max_r = optional_field<std::int64_t>(j, "max_r");
  if (j.contains("n")) {
    if (j.at("n").is_array()) {
      job.n = *optional_field<std::vector<std::int64_t>>(j, "n");
    } else {
      job.n = {*optional_field<std::int64_t>(j, "n")};
    }
  }
  job.file = optional_field<std::string>(j, "file");
  if (j.contains("germ")) job.germ = j.at("germ");
  job.format = optional_field<std::string>(j, "format").value_or("");
  job.out = optional_field<std::string>(j, "out");
  job.workers = optional_field<unsigned>(j, "workers").value_or(0);
  return job;
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  auto fail = [&](const char* kind, const std::string& message, int status) {
    Json e;
    e["error"] = kind;
    e["message"] = message;
    err << e.dump() << "\n";
    return status;
  };
  try {
    emit(job, out, execute(job));
    return 0;
  } catch (const InvalidInput& e) {
    return fail(e.kind(), e.what(), 2);
  } catch (const Error& e) {
    return fail(e.kind(), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal_error", e.what(), 1);
  }
}

std::vector<ScanRow> scan(std::int64_t max_r, const std::vector<std::int64_t>& n, unsigned workers) {
  std::vector<ScanRow> rows;
  for (std::int64_t r = 2; r <= max_r; ++r)
    for (std::int64_t a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      auto add = [&](const char* family, std::int64_t k) {
        ScanRow row;
        row.family = family;
        row.r = r;
        row.a = a;
        row.n = k;
        rows.push_back(std::move(row));
      };
      add("xy_t", 0);
      for (auto k : n) {
        if (k < 1) throw InvalidInput("--n values must be positive");
        add("moderate_binomial", k);
      }
    }

  auto fill = [](ScanRow& row) {
    HypersurfaceGerm g = row.family == "xy_t" ? HypersurfaceGerm::xy_t(row.r, row.a)
                                              : HypersurfaceGerm::moderate_binomial(row.r, row.a, static_cast<int>(row.n));
    ResolutionTree t = resolve(g);
    row.blowups = t.blowup_count();
    row.terminal = row.semistable = row.leaves_smooth = true;
    std::set<Rational> discs;
    for (const auto& node : t.nodes) {
      if (!node.step) {
        if (node.germ_class.index != 1) row.leaves_smooth = false;
        continue;
      }
      row.depth = std::max(row.depth, node.depth + 1);
      discs.insert(node.step->discrepancy);
      if (node.step->discrepancy <= 0) row.terminal = false;
      if (node.step->fiber_mult != 1) row.semistable = false;
    }
    row.discrepancies.assign(discs.begin(), discs.end());
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < rows.size(); i = next++) fill(rows[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string scan_table(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "family\tr\ta\tn\tblowups\tdepth\tdiscrepancies\tcertified\n";
  for (const auto& r : rows)
    os << r.family << "\t" << r.r << "\t" << r.a << "\t" << r.n << "\t" << r.blowups << "\t" << r.depth << "\t"
       << join(r.discrepancies, ",") << "\t" << (r.certified() ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace toricflip
