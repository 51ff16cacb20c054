#include "holosym/report.hpp"

#include "holosym/error.hpp"

namespace holosym {

using nlohmann::json;

namespace {

json poly_array(const std::vector<Poly> &v) {
  json out = json::array();
  for (const auto &p : v) {
    out.push_back(p.to_string());
  }
  return out;
}

json rational_array(const std::vector<Rational> &v) {
  json out = json::array();
  for (const auto &r : v) {
    out.push_back(to_string(r));
  }
  return out;
}

/// Nonzero entries keyed by comma-separated 1-based indices.
json sparse_entries(const std::vector<Poly> &v, int n, int rank) {
  json out = json::object();
  const auto d = static_cast<std::size_t>(n);
  for (std::size_t f = 0; f < v.size(); ++f) {
    if (v[f].is_zero()) {
      continue;
    }
    std::string k;
    std::size_t rest = f;
    std::vector<std::size_t> idx(static_cast<std::size_t>(rank));
    for (int s = rank - 1; s >= 0; --s) {
      idx[static_cast<std::size_t>(s)] = rest % d + 1;
      rest /= d;
    }
    for (auto i : idx) {
      k += (k.empty() ? "" : ",") + std::to_string(i);
    }
    out[k] = v[f].to_string();
  }
  return out;
}

json decomposition_json(const PolyDecomposition &d) {
  const auto n = static_cast<std::size_t>(d.n);
  json t = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back(poly_array(std::vector<Poly>(d.t.begin() + static_cast<long>(i * n),
                                             d.t.begin() + static_cast<long>((i + 1) * n))));
  }
  return {{"T", t},
          {"R0", sparse_entries(d.r0, d.n, 4)},
          {"P", sparse_entries(d.p, d.n, 3)},
          {"v", poly_array(d.v)},
          {"lambda", d.lambda.to_string()}};
}

json family_json(const FamilySummary &f) {
  json out = {{"H2", to_json(f.params.H2)},
              {"H1", to_json(f.params.H1)},
              {"H0", to_json(f.params.H0)},
              {"H2_rank", f.h2_rank},
              {"H2_charpoly", rational_array(f.h2_charpoly)},
              {"has_tail", f.has_tail},
              {"normal_form_curvature_equal", f.normal_form_curvature_equal},
              {"predicted_order", f.predicted_order}};
  if (f.has_tail) {
    out["G"] = poly_array(f.params.G);
    out["K"] = f.params.K ? f.params.K->to_string() : "0";
  }
  return out;
}

} // namespace

json to_json(const ExactMatrix &m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      row.push_back(to_string(m(r, c)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const SubspaceBasis &basis) {
  json vectors = json::array();
  for (const auto &v : basis.vectors()) {
    json entries = json::object();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!is_zero(v[i])) {
        entries[std::to_string(i)] = to_string(v[i]);
      }
    }
    vectors.push_back(std::move(entries));
  }
  return {{"dimension", basis.dimension()}, {"ambient_dimension", basis.ambient_dimension()}, {"basis", vectors}};
}

json to_json(const AnalysisReport &r) {
  json checks = json::array();
  for (Check c : r.request.checks) {
    checks.push_back(to_string(c));
  }
  json out;
  out["input"] = {{"n", r.request.spec.n}, {"H", r.request.h_text}, {"H_canonical", r.request.spec.H.to_string()},
                  {"checks", checks}, {"k_max", r.request.k_max}};
  out["ppwave"] = r.ppwave;
  out["p_parallel"] = r.recurrence.p_parallel;
  out["p_parallelizable"] = r.recurrence.parallelizable;
  out["recurrence"] = {{"theta_u", r.recurrence.theta_u.to_string()}, {"verified", r.recurrence.recurrence_verified}};
  if (r.order) {
    if (r.order->order) {
      out["symmetry_order"] = *r.order->order;
    } else {
      out["symmetry_order"] = "exceeds";
    }
  }
  if (r.decomposition) {
    out["decomposition"] = decomposition_json(*r.decomposition);
    out["decomposition"]["T_only"] = r.decomposition_t_only.value_or(false);
  }
  if (r.holonomy_in_pE) {
    out["holonomy_in_p_wedge_E"] = *r.holonomy_in_pE;
  }
  if (r.nabla2_norm) {
    out["nabla2R_norm"] = r.nabla2_norm->to_string();
  }
  if (r.constraints) {
    json groups = json::object();
    for (const auto &g : r.constraints->groups) {
      json nz = json::object();
      for (const auto &[k, p] : g.nonzero) {
        nz[k] = p.to_string();
      }
      groups[g.name] = {{"checked", g.checked}, {"nonzero", nz}};
    }
    out["constraint_residuals"] = {{"all_zero", r.constraints->all_zero()}, {"groups", groups}};
  }
  if (r.family) {
    out["family"] = family_json(*r.family);
  }
  json verdicts = json::object();
  for (const auto &[k, v] : r.verdicts) {
    verdicts[k] = v;
  }
  out["verdicts"] = verdicts;
  out["passed"] = r.passed();
  return out;
}

AnalysisRequest parse_request(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) {
    throw ParseError("spec must be a JSON object", 0);
  }
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("spec needs an integer field \"n\"", 0);
  }
  if (!j.contains("H") || !j["H"].is_string()) {
    throw ParseError("spec needs a string field \"H\"", 0);
  }
  AnalysisRequest req;
  const int n = j["n"].get<int>();
  if (n < 1) {
    throw PreconditionError("n must be positive");
  }
  if (n > kMaxGeometryN) {
    throw SizeCapError("metric pipeline supports n <= " + std::to_string(kMaxGeometryN));
  }
  req.h_text = j["H"].get<std::string>();
  req.spec = MetricSpec::parse(n, req.h_text);
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) {
      throw ParseError("\"checks\" must be an array of strings", 0);
    }
    for (const auto &c : j["checks"]) {
      if (!c.is_string()) {
        throw ParseError("\"checks\" must be an array of strings", 0);
      }
      const Check ck = parse_check(c.get<std::string>());
      if (std::find(req.checks.begin(), req.checks.end(), ck) == req.checks.end()) {
        req.checks.push_back(ck);
      }
    }
  } else {
    req.checks = all_checks();
  }
  if (j.contains("k_max")) {
    if (!j["k_max"].is_number_integer()) {
      throw ParseError("\"k_max\" must be an integer", 0);
    }
    req.k_max = j["k_max"].get<int>();
  }
  return req;
}

std::string render(const json &j) { return j.dump(2) + "\n"; }

} // namespace holosym
