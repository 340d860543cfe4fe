// rankgap: rank arithmetic for torus bundles over the circle.
//
// Exit codes: 0 success, 1 failed verification, 2 bad input. Structured
// results go to stdout only; diagnostics go to stderr.

#include <cmath>
#include <cstddef>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "rankgap/errors.hpp"
#include "rankgap/frame.hpp"
#include "rankgap/json_io.hpp"
#include "rankgap/parse.hpp"
#include "rankgap/product_theorem.hpp"
#include "rankgap/search.hpp"
#include "rankgap/torus_bundle.hpp"

namespace {

using rankgap::json;

void emit(const json& j, const std::string& format) {
  if (format == "text")
    std::cout << rankgap::render_text(j);
  else
    std::cout << j.dump(2) << "\n";
}

rankgap::TorusAutomorphism automorphism(const std::string& literal, long order_cap) {
  return rankgap::TorusAutomorphism(rankgap::parse_matrix(literal), order_cap);
}

json certificate_with_frames(const rankgap::CounterexampleCertificate& cert,
                             int grid_n, double tol) {
  auto report = [&](const rankgap::IntMat& m) {
    return rankgap::to_json(rankgap::verify_frame(rankgap::build_frame(m), grid_n, tol));
  };
  json out = rankgap::to_json(cert);
  out["frames"] = json{{"A", report(cert.a)}, {"B", report(cert.b)}, {"H", report(cert.h)}};
  const bool frames_pass = out["frames"]["A"]["pass"].get<bool>() &&
                           out["frames"]["B"]["pass"].get<bool>() &&
                           out["frames"]["H"]["pass"].get<bool>();
  out["pass"] = cert.verified() && frames_pass;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank arithmetic for torus bundles over the circle"};
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  long order_cap = rankgap::kDefaultOrderCap;
  app.add_option("--order-cap", order_cap, "iteration cap for matrix order")
      ->capture_default_str();

  std::string matrix_a, matrix_b;
  int grid_n = 4096;
  double tol = 1e-8;
  double perturb = 0.0;
  long bound = 3;
  int dim = 2;
  bool orientable = false;
  std::size_t limit = 10;
  std::vector<long> periods;

  CLI::App* cmd_order = app.add_subcommand("order", "order of a matrix in GL(k,Z)");
  cmd_order->add_option("matrix", matrix_a, "matrix literal")->required();

  CLI::App* cmd_pi1 =
      app.add_subcommand("pi1", "fundamental-group data of the mapping torus");
  cmd_pi1->add_option("matrix", matrix_a, "matrix literal")->required();

  CLI::App* cmd_rank = app.add_subcommand("rank", "rank of the mapping torus");
  cmd_rank->add_option("matrix", matrix_a, "matrix literal")->required();

  CLI::App* cmd_decompose =
      app.add_subcommand("decompose", "write M(A) x M(B) as a single mapping torus");
  cmd_decompose->add_option("matrix_a", matrix_a, "first matrix")->required();
  cmd_decompose->add_option("matrix_b", matrix_b, "second matrix")->required();

  CLI::App* cmd_gap =
      app.add_subcommand("rank-gap", "rank of the product versus the rank sum");
  cmd_gap->add_option("matrix_a", matrix_a, "first matrix")->required();
  cmd_gap->add_option("matrix_b", matrix_b, "second matrix")->required();

  CLI::App* cmd_frame =
      app.add_subcommand("frame-verify", "build and verify a commuting frame");
  cmd_frame->add_option("matrix", matrix_a, "matrix literal")->required();
  cmd_frame->add_option("--grid", grid_n, "verification grid points")->capture_default_str();
  cmd_frame->add_option("--tol", tol, "verification tolerance")->capture_default_str();
  cmd_frame->add_option("--perturb", perturb,
                        "inject a coefficient perturbation of this size (negative control)");

  CLI::App* cmd_search =
      app.add_subcommand("search", "search for verified counterexample pairs");
  cmd_search->add_option("--bound", bound, "entry bound")->capture_default_str();
  cmd_search->add_option("--dim", dim, "max fiber dimension")->capture_default_str();
  cmd_search->add_flag("--orientable", orientable, "require det +1 on both factors");
  cmd_search->add_option("--limit", limit, "max certificates")->capture_default_str();
  cmd_search->add_option("--periods", periods, "require this exact period pair m n")
      ->expected(2);

  CLI::App* cmd_certify = app.add_subcommand(
      "certify", "full certificate: decomposition, ranks, and frame checks");
  cmd_certify->add_option("matrix_a", matrix_a, "first matrix")->required();
  cmd_certify->add_option("matrix_b", matrix_b, "second matrix")->required();
  cmd_certify->add_option("--grid", grid_n, "verification grid points")->capture_default_str();
  cmd_certify->add_option("--tol", tol, "verification tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_order->parsed()) {
      const rankgap::MatrixOrder ord =
          rankgap::order(rankgap::parse_matrix(matrix_a), order_cap);
      json out;
      if (ord.is_finite())
        out = json{{"order", ord.value()}};
      else
        out = json{{"order", "infinite"}};
      emit(out, format);
      return 0;
    }

    if (cmd_pi1->parsed()) {
      const rankgap::MappingTorusDescriptor m{automorphism(matrix_a, order_cap)};
      json out = json{{"descriptor", rankgap::to_json(m)}};
      out.update(rankgap::to_json(rankgap::pi1(m)));
      emit(out, format);
      return 0;
    }

    if (cmd_rank->parsed()) {
      const rankgap::MappingTorusDescriptor m{automorphism(matrix_a, order_cap)};
      json out = json{{"descriptor", rankgap::to_json(m)}};
      out.update(rankgap::to_json(rankgap::rank(m)));
      out["is_torus"] = rankgap::is_torus(m);
      out["orientable"] = rankgap::is_orientable(m);
      emit(out, format);
      return 0;
    }

    if (cmd_decompose->parsed()) {
      const auto dec = rankgap::decompose(automorphism(matrix_a, order_cap),
                                          automorphism(matrix_b, order_cap));
      emit(rankgap::to_json(dec), format);
      return dec.all_checks() ? 0 : 1;
    }

    if (cmd_gap->parsed()) {
      const auto cert = rankgap::certify_pair(automorphism(matrix_a, order_cap),
                                              automorphism(matrix_b, order_cap));
      // rank-gap reports the certificate without frame verification
      json out = rankgap::to_json(cert);
      out.erase("orientable_A");
      out.erase("orientable_B");
      emit(out, format);
      return (cert.check_bezout && cert.check_h_power && cert.check_basis_unimodular)
                 ? 0
                 : 1;
    }

    if (cmd_frame->parsed()) {
      rankgap::CoefficientFrame frame =
          rankgap::build_frame(rankgap::parse_matrix(matrix_a));
      if (perturb != 0.0) {
        // corrupt one interior row so the bracket check must trip
        const auto base_phi = frame.phi;
        const auto base_prime = frame.phi_prime;
        const double eps = perturb;
        const int row = frame.k > 1 ? 1 : 0;
        frame.phi = [base_phi, eps, row](double t) {
          rankgap::RealMat p = base_phi(t);
          p(row, 0) += eps * std::sin(8.0 * t) * t * (1.0 - t);
          return p;
        };
        frame.phi_prime = [base_prime, eps, row](double t) {
          rankgap::RealMat p = base_prime(t);
          p(row, 0) += eps * (8.0 * std::cos(8.0 * t) * t * (1.0 - t) +
                              std::sin(8.0 * t) * (1.0 - 2.0 * t));
          return p;
        };
      }
      const rankgap::FrameReport report = rankgap::verify_frame(frame, grid_n, tol);
      emit(rankgap::to_json(report), format);
      return report.pass ? 0 : 1;
    }

    if (cmd_search->parsed()) {
      rankgap::SearchConfig cfg;
      cfg.dim = dim;
      cfg.entry_bound = bound;
      cfg.order_cap = order_cap;
      cfg.require_orientable = orientable;
      if (!periods.empty()) cfg.require_periods = std::make_pair(periods[0], periods[1]);
      const auto certs = rankgap::find_counterexamples(cfg, limit);
      json out = json::array();
      for (const auto& cert : certs) out.push_back(rankgap::to_json(cert));
      emit(out, format);
      return 0;
    }

    if (cmd_certify->parsed()) {
      const auto cert = rankgap::certify_pair(automorphism(matrix_a, order_cap),
                                              automorphism(matrix_b, order_cap));
      const json out = certificate_with_frames(cert, grid_n, tol);
      emit(out, format);
      return out["pass"].get<bool>() ? 0 : 1;
    }
  } catch (const rankgap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
