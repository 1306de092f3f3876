#include "banachlab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "banachlab/errors.hpp"

namespace banachlab {

namespace {

Json descriptor_to_json(const Descriptor& d);

Json lp_json(const LpDesc& d) {
  Json p;
  if (std::isinf(d.p))
    p = "inf";
  else
    p = d.p;
  return Json{{"lp", Json{{"p", p}, {"dim", d.dim}}}};
}

Json polyhedral_json(const PolyhedralDesc& d) {
  Json verts = Json::array();
  for (int c = 0; c < d.vertices.cols(); ++c) {
    Json row = Json::array();
    for (int r = 0; r < d.vertices.rows(); ++r) row.push_back(d.vertices(r, c));
    verts.push_back(row);
  }
  return Json{{"polyhedral", Json{{"vertices", verts}}}};
}

Json sum_json(const SumDesc& d) {
  Json parts = Json::array();
  for (const Space& p : d.parts) parts.push_back(descriptor_to_json(p.desc()));
  return Json{{"sum", Json{{"kind", d.kind == SumKind::L1 ? "l1" : "linf"},
                           {"parts", parts}}}};
}

Json supsub_json(const SupSubspaceDesc& d) {
  Json rows = Json::array();
  for (int r = 0; r < d.basis.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < d.basis.cols(); ++c) row.push_back(d.basis(r, c));
    rows.push_back(row);
  }
  return Json{{"sup_subspace", Json{{"nodes", d.nodes}, {"basis", rows}}}};
}

Json descriptor_to_json(const Descriptor& d) {
  if (const auto* lp = std::get_if<LpDesc>(&d)) return lp_json(*lp);
  if (const auto* poly = std::get_if<PolyhedralDesc>(&d))
    return polyhedral_json(*poly);
  if (const auto* sum = std::get_if<SumDesc>(&d)) return sum_json(*sum);
  return supsub_json(std::get<SupSubspaceDesc>(d));
}

const Json& need(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw UsageError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

Eigen::MatrixXd parse_real_matrix(const Json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw UsageError(std::string(what) + ": expected an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.front().size());
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw UsageError(std::string(what) + ": ragged rows");
    for (int c = 0; c < cols; ++c) {
      if (!row[c].is_number())
        throw UsageError(std::string(what) + ": non-numeric entry");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

std::complex<double> parse_complex_entry(const Json& e, const char* what) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw UsageError(std::string(what) + ": complex entries are [re, im]");
}

Descriptor descriptor_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1)
    throw UsageError("descriptor: expected exactly one descriptor key");
  if (j.contains("lp")) {
    const Json& l = j["lp"];
    LpDesc d;
    const Json& p = need(l, "p", "lp");
    if (p.is_string()) {
      if (p.get<std::string>() != "inf")
        throw UsageError("lp: p must be a number or \"inf\"");
      d.p = lp_infinity();
    } else if (p.is_number()) {
      d.p = p.get<double>();
    } else {
      throw UsageError("lp: p must be a number or \"inf\"");
    }
    d.dim = need(l, "dim", "lp").get<int>();
    return d;
  }
  if (j.contains("polyhedral")) {
    Eigen::MatrixXd rows =
        parse_real_matrix(need(j["polyhedral"], "vertices", "polyhedral"),
                          "polyhedral vertices");
    PolyhedralDesc d;
    d.vertices = rows.transpose();  // one vertex per row on the wire
    return d;
  }
  if (j.contains("sum")) {
    const Json& s = j["sum"];
    SumDesc d;
    std::string kind = need(s, "kind", "sum").get<std::string>();
    if (kind == "l1")
      d.kind = SumKind::L1;
    else if (kind == "linf")
      d.kind = SumKind::Linf;
    else
      throw UsageError("sum: kind must be l1 or linf");
    const Json& parts = need(s, "parts", "sum");
    if (!parts.is_array() || parts.empty())
      throw UsageError("sum: parts must be a non-empty array");
    // Parts are rebuilt over the real field first and re-made by the caller
    // with the top-level field.
    for (const Json& p : parts)
      d.parts.push_back(make_space(Field::Real, descriptor_from_json(p)));
    return d;
  }
  if (j.contains("sup_subspace")) {
    const Json& s = j["sup_subspace"];
    SupSubspaceDesc d;
    const Json& nodes = need(s, "nodes", "sup_subspace");
    if (!nodes.is_array()) throw UsageError("sup_subspace: nodes array");
    for (const Json& n : nodes) {
      if (!n.is_number()) throw UsageError("sup_subspace: nodes array");
      d.nodes.push_back(n.get<double>());
    }
    d.basis = parse_real_matrix(need(s, "basis", "sup_subspace"),
                                "sup_subspace basis");
    return d;
  }
  throw UsageError("descriptor: unknown kind");
}

// Sum descriptors parse their parts over the declared field.
Descriptor descriptor_with_field(const Json& j, Field field) {
  Descriptor d = descriptor_from_json(j);
  if (auto* sum = std::get_if<SumDesc>(&d)) {
    std::vector<Space> parts;
    const Json& pj = j["sum"]["parts"];
    for (const Json& p : pj)
      parts.push_back(make_space(field, descriptor_with_field(p, field)));
    sum->parts = std::move(parts);
  }
  return d;
}

}  // namespace

Json space_to_json(const Space& s) {
  if (!s.valid()) throw UsageError("space_to_json: invalid space");
  return Json{{"field", s.field() == Field::Real ? "real" : "complex"},
              {"descriptor", descriptor_to_json(s.desc())}};
}

Space space_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("space: expected an object");
  std::string f = need(j, "field", "space").get<std::string>();
  Field field;
  if (f == "real")
    field = Field::Real;
  else if (f == "complex")
    field = Field::Complex;
  else
    throw UsageError("space: field must be real or complex");
  return make_space(field,
                    descriptor_with_field(need(j, "descriptor", "space"), field));
}

Json operator_to_json(const Operator& T) {
  Json out;
  out["space"] = space_to_json(T.domain());
  if (!approx_equal(T.domain(), T.codomain(), 0.0))
    out["codomain"] = space_to_json(T.codomain());
  out["matrix"] = T.is_real() ? matrix_json(T.real()) : matrix_json(T.complex());
  if (!T.provenance().empty()) out["provenance"] = T.provenance();
  return out;
}

Operator operator_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("operator: expected an object");
  Space dom = space_from_json(need(j, "space", "operator"));
  Space cod = j.contains("codomain") ? space_from_json(j["codomain"]) : dom;
  const Json& mj = need(j, "matrix", "operator");
  std::string prov =
      j.contains("provenance") ? j["provenance"].get<std::string>() : "";
  if (dom.field() == Field::Complex) {
    if (!mj.is_array() || mj.empty() || !mj.front().is_array())
      throw UsageError("operator matrix: expected an array of rows");
    const int rows = static_cast<int>(mj.size());
    const int cols = static_cast<int>(mj.front().size());
    Eigen::MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      if (static_cast<int>(mj[r].size()) != cols)
        throw UsageError("operator matrix: ragged rows");
      for (int c = 0; c < cols; ++c)
        m(r, c) = parse_complex_entry(mj[r][c], "operator matrix");
    }
    return Operator(dom, cod, std::move(m), prov);
  }
  return Operator(dom, cod, parse_real_matrix(mj, "operator matrix"), prov);
}

Json scalar(double value, bool exact) {
  return Json{{"value", value}, {"provenance", exact ? "exact" : "sampled"}};
}

const char* ternary_name(Ternary t) {
  switch (t) {
    case Ternary::True:
      return "true";
    case Ternary::False:
      return "false";
    default:
      return "unknown";
  }
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json vector_json(const Eigen::VectorXcd& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i)
    a.push_back(Json::array({v(i).real(), v(i).imag()}));
  return a;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json matrix_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const PairEnumeration& p, Field field) {
  Json pairs = Json::array();
  for (const DualityPair& q : p.pairs) {
    Json e;
    if (field == Field::Real) {
      e["x"] = vector_json(Eigen::VectorXd(q.x.real()));
      e["xstar"] = vector_json(Eigen::VectorXd(q.xstar.real()));
    } else {
      e["x"] = vector_json(q.x);
      e["xstar"] = vector_json(q.xstar);
    }
    pairs.push_back(e);
  }
  return Json{{"pairs", pairs},
              {"count", p.pairs.size()},
              {"exact", p.exact},
              {"tol_pair", p.tol_pair}};
}

Json extremes_json(const std::vector<Eigen::VectorXd>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(vector_json(x));
  return Json{{"extreme_points", a}, {"count", xs.size()}};
}

Json to_json(const RangeSummary& r) {
  Json samples = Json::array();
  for (const auto& z : r.samples)
    samples.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"radius", scalar(r.radius, r.exact)},
              {"sup_re", scalar(r.sup_re, r.exact)},
              {"inf_re", scalar(r.inf_re, r.exact)},
              {"samples", samples}};
}

Json to_json(const ExpFormulaReport& r) {
  return Json{{"lhs", scalar(r.lhs, r.exact)},
              {"mid", scalar(r.mid, false)},
              {"rhs", scalar(r.rhs, false)},
              {"beta_raw", r.beta_raw},
              {"beta_richardson", r.beta_richardson}};
}

Json to_json(const DaugavetReport& r) {
  return Json{{"holds", r.holds},
              {"lhs", scalar(r.lhs, r.exact)},
              {"rhs", scalar(r.rhs, r.exact)},
              {"range_criterion", r.range_criterion},
              {"sup_re", scalar(r.sup_re, r.exact)},
              {"norm", scalar(r.norm, r.exact)},
              {"degenerate_zero", r.degenerate_zero}};
}

Json to_json(const CircleReport& r) {
  Json inst = Json::array();
  for (const auto& i : r.instances)
    inst.push_back(Json{{"lambda", Json::array({i.lambda.real(), i.lambda.imag()})},
                        {"applies", i.applies},
                        {"dist", scalar(i.dist, false)},
                        {"verified", i.verified}});
  return Json{{"instances", inst}, {"all_verified", r.all_verified}};
}

Json to_json(const LieAlgebraReport& r) {
  Json basis = Json::array();
  for (const Operator& b : r.basis)
    basis.push_back(b.is_real() ? matrix_json(b.real())
                                : matrix_json(b.complex()));
  return Json{{"dimension", r.dimension},
              {"basis", basis},
              {"residuals", r.residuals}};
}

Json to_json(const SemigroupReport& r) {
  return Json{{"max_drift", scalar(r.max_drift, r.exact)},
              {"isometric", r.isometric}};
}

Json to_json(const NormResult& r) {
  Json out{{"norm", scalar(r.value, r.exact)}};
  if (r.witness.size()) out["witness"] = vector_json(r.witness);
  return out;
}

Json to_json(const IndexReport& r) {
  return Json{{"upper", scalar(r.upper, r.exact)},
              {"estimate", scalar(r.estimate, r.exact)},
              {"witness", operator_to_json(r.witness)}};
}

Json to_json(const DualIndexReport& r) {
  return Json{{"primal", scalar(r.primal, false)},
              {"dual", scalar(r.dual, false)},
              {"slack", scalar(r.slack, false)},
              {"max_radius_gap", scalar(r.max_radius_gap, true)},
              {"radius_ok", r.radius_ok},
              {"consistent", r.consistent}};
}

Json to_json(const CantorGrid& g) {
  return Json{{"level", g.level},
              {"m", g.m},
              {"grid", g.grid},
              {"cantor_nodes", g.cantor_nodes},
              {"gap_nodes", g.gap_nodes}};
}

Json to_json(const BumpResult& b) {
  Json out{{"found", b.found}};
  if (b.found) {
    out["center"] = b.center;
    out["center_value"] = b.center_value;
    out["values"] = vector_json(b.values);
  } else {
    out["reason"] = b.reason;
  }
  return out;
}

Json to_json(const QuotientReport& q) {
  return Json{{"max_lift_defect", scalar(q.max_lift_defect, true)},
              {"phi_norm", scalar(q.phi_norm, q.exact)},
              {"restriction_exact", q.restriction_exact},
              {"passed", q.passed}};
}

Json to_json(const GapFunctionalReport& g) {
  return Json{{"norms", g.norms},
              {"worst_defect", scalar(g.worst_defect, true)},
              {"bump_witnesses", g.bump_witnesses},
              {"extreme_fraction", scalar(g.extreme_fraction, true)}};
}

Json to_json(const ExperimentRecord& r) {
  return Json{{"m", r.m},
              {"dim_x", r.dim_x},
              {"index_upper", scalar(r.index_upper, false)},
              {"lie_dim_primal", r.lie_dim_primal},
              {"lie_dim_dual_model", r.lie_dim_dual_model},
              {"bump_coverage_fraction", scalar(r.bump_coverage_fraction, true)},
              {"dual_rotation_drift", scalar(r.dual_rotation_drift, false)}};
}

Json to_json(const std::vector<ExperimentRecord>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return Json{{"records", a}};
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw UsageError("malformed JSON input");
  return j;
}

}  // namespace banachlab
