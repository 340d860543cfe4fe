#include "rankgap/json_io.hpp"

#include <sstream>

#include "rankgap/errors.hpp"

namespace rankgap {

json to_json(const IntMat& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < a.cols(); ++j) {
      const Int& v = a(i, j);
      if (v.fits_slong_p())
        row.push_back(v.get_si());
      else
        row.push_back(v.get_str());  // beyond int64: decimal string
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMat intmat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix JSON must be a non-empty array");
  const std::size_t n = j.size();
  IntMat m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n)
      throw ParseError("matrix JSON must be square");
    for (std::size_t c = 0; c < n; ++c) {
      const auto& v = j[i][c];
      if (v.is_number_unsigned())
        m(static_cast<Index>(i), static_cast<Index>(c)) =
            Int(static_cast<unsigned long>(v.get<std::uint64_t>()));
      else if (v.is_number_integer())
        m(static_cast<Index>(i), static_cast<Index>(c)) =
            Int(static_cast<long>(v.get<std::int64_t>()));
      else if (v.is_string())
        m(static_cast<Index>(i), static_cast<Index>(c)) = Int(v.get<std::string>());
      else
        throw ParseError("matrix JSON entries must be integers");
    }
  }
  return m;
}

json to_json(const MappingTorusDescriptor& m) {
  return json{{"k", m.fiber.dim()}, {"A", to_json(m.fiber.matrix())}};
}

json to_json(const Pi1Data& p) {
  json torsion = json::array();
  for (const Int& t : p.torsion) torsion.push_back(t.get_si());
  return json{{"fiber_rank", p.fiber_rank},
              {"monodromy", to_json(p.monodromy)},
              {"abelianization", json{{"free_rank", p.free_rank}, {"torsion", torsion}}},
              {"abelian", p.abelian()}};
}

json to_json(const ManifoldRank& r) {
  json justification;
  if (r.justification == RankJustification::kTorus)
    justification = json{{"exact", "is-torus"}};
  else
    justification = json{{"lower", "commuting-frame"}, {"upper", "torus-rigidity"}};
  return json{{"rank", r.value}, {"justification", justification}};
}

json to_json(const ProductDecomposition& dec) {
  return json{{"A", to_json(dec.a.matrix())},
              {"B", to_json(dec.b.matrix())},
              {"m", dec.bezout.m},
              {"n", dec.bezout.n},
              {"c", dec.bezout.c},
              {"d", dec.bezout.d},
              {"H", to_json(dec.h.matrix())},
              {"checks",
               json{{"bezout", dec.check_bezout},
                    {"h_power", dec.check_h_power},
                    {"basis_unimodular", dec.check_basis_unimodular}}}};
}

json to_json(const FrameReport& report) {
  return json{{"bracket_max", report.bracket_max},
              {"gram_min", report.gram_min},
              {"seam",
               json{{"phi_start", report.seam_phi_start},
                    {"phi_end", report.seam_phi_end},
                    {"tau_start", report.seam_tau_start},
                    {"tau_end", report.seam_tau_end}}},
              {"flatness",
               json{{"d1", report.flat_d1}, {"d2", report.flat_d2}, {"d3", report.flat_d3}}},
              {"pass", report.pass},
              {"grid_n", report.grid_n},
              {"tol", report.tol}};
}

json to_json(const CounterexampleCertificate& cert) {
  return json{{"A", to_json(cert.a)},
              {"B", to_json(cert.b)},
              {"m", cert.m},
              {"n", cert.n},
              {"c", cert.c},
              {"d", cert.d},
              {"H", to_json(cert.h)},
              {"rank_product", cert.rank_product},
              {"rank_A", cert.rank_a},
              {"rank_B", cert.rank_b},
              {"gap", cert.gap},
              {"orientable_A", cert.orientable_a},
              {"orientable_B", cert.orientable_b},
              {"checks",
               json{{"bezout", cert.check_bezout},
                    {"h_power", cert.check_h_power},
                    {"basis_unimodular", cert.check_basis_unimodular}}}};
}

namespace {

void render_into(const json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::string path = prefix.empty() ? key : prefix + "." + key;
      if (value.is_object())
        render_into(value, path, out);
      else
        out << path << ": " << value.dump() << "\n";
    }
  } else {
    out << j.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << "--- [" << i << "]\n";
      render_into(j[i], "", out);
    }
  } else {
    render_into(j, "", out);
  }
  return out.str();
}

}  // namespace rankgap
