// structlin: batch front door for building, verifying, and dissecting
// structure-preserving block Kronecker linearizations.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "structlin/io.hpp"
#include "structlin/structlin.hpp"

namespace sl = structlin;
using sl::json;

namespace {

struct RunConfig {
  std::string poly_path, pencil_path, out_path, report_path, free_path, w_path, matrix_path;
  std::string mm_a_path, mm_b_path;
  std::string template_name, mode, lambda_text, kind_text;
  int sigma = 1;
  int grade_override = -1;
  int basis_k = 1, basis_n = 1;
  int max_degree = 24;
  bool trailing = false;
  bool conjugate = false;
  double tol = 1e-10;
  uint64_t seed = 0x5eed;
};

class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

sl::Involution involution_of(const RunConfig& cfg) {
  return cfg.conjugate ? sl::Involution::conjugate_transpose : sl::Involution::transpose;
}

template <class T>
T parse_lambda(const std::string& text) {
  if constexpr (std::is_same_v<T, sl::Rational>) {
    return sl::rational_from_string(text);
  } else if constexpr (std::is_same_v<T, sl::GaussianRational>) {
    auto comma = text.find(',');
    if (comma == std::string::npos) return sl::GaussianRational(sl::rational_from_string(text));
    return sl::GaussianRational(sl::rational_from_string(text.substr(0, comma)),
                                sl::rational_from_string(text.substr(comma + 1)));
  } else if constexpr (std::is_same_v<T, double>) {
    return std::stod(text);
  } else {
    auto comma = text.find(',');
    if (comma == std::string::npos) return sl::Complex(std::stod(text), 0.0);
    return sl::Complex(std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1)));
  }
}

template <class T>
sl::FreeParams<T> load_free_params(const std::string& path, int dim, int n) {
  sl::FreeParams<T> fp;
  if (path.empty()) return fp;
  json j = sl::load_json_file(path);
  for (const json& e : j.at("entries")) {
    int i = e.at("i").get<int>(), jj = e.at("j").get<int>();
    if (i < 1 || jj <= i || jj > dim)
      throw std::invalid_argument("free parameter block (" + std::to_string(i) + "," +
                                  std::to_string(jj) + ") out of range");
    sl::Matrix<T> a(n, n), b(n, n);
    if (e.contains("A")) a = sl::matrix_from_json<T>(e.at("A"));
    if (e.contains("B")) b = sl::matrix_from_json<T>(e.at("B"));
    fp[{i, jj}] = {a, b};
  }
  return fp;
}

template <class T>
std::vector<sl::Matrix<T>> load_w(const std::string& path) {
  std::vector<sl::Matrix<T>> w;
  if (path.empty()) return w;
  json j = sl::load_json_file(path);
  for (const json& m : j.at("W")) w.push_back(sl::matrix_from_json<T>(m));
  return w;
}

void maybe_write_mm(const RunConfig& cfg, const sl::AnyMatPoly& pencil) {
  if (cfg.mm_a_path.empty()) return;
  std::visit(
      [&](const auto& l) {
        sl::write_matrix_market_file(cfg.mm_a_path, l.coeff(0), "constant coefficient A of lambda*B+A");
        sl::write_matrix_market_file(cfg.mm_b_path, l.coeff(1), "leading coefficient B of lambda*B+A");
      },
      pencil);
}

int run_build_odd(const RunConfig& cfg) {
  sl::AnyMatPoly any = sl::any_matpoly_from_json(sl::load_json_file(cfg.poly_path));
  return std::visit(
      [&](auto p) -> int {
        using T = typename std::decay_t<decltype(p)>;
        using S = std::decay_t<decltype(p.coeff(0)(0, 0))>;
        (void)sizeof(T);
        if (cfg.grade_override >= 0) p = p.regrade(cfg.grade_override);
        int d = p.grade(), n = p.rows();
        if (d % 2 == 0) throw std::invalid_argument("build-odd: odd grade required");
        int s = (d - 1) / 2;
        sl::MatPoly<S> inner(1, 1, 1);
        if (!cfg.template_name.empty()) {
          sl::TemplateName name;
          if (cfg.template_name == "blockdiag") name = sl::TemplateName::blockdiag;
          else if (cfg.template_name == "pentadiagonal") name = sl::TemplateName::pentadiagonal;
          else if (cfg.template_name == "ex1") name = sl::TemplateName::ex1;
          else if (cfg.template_name == "ex2") name = sl::TemplateName::ex2;
          else throw std::invalid_argument("unknown template '" + cfg.template_name + "'");
          inner = sl::template_library(name, d).instantiate(p);
        } else {
          inner = sl::solve_structured(p, cfg.sigma, involution_of(cfg),
                                       load_free_params<S>(cfg.free_path, s + 1, n), cfg.tol);
        }
        auto l = sl::assemble(inner, cfg.sigma, s, n, involution_of(cfg));
        if (l.degenerate)
          std::cerr << "warning: grade 1 input, Kronecker blocks are empty and the "
                       "linearization statement is vacuous\n";
        if (!sl::check_condition_coeff(inner, p, s, n, cfg.tol))
          throw VerificationFailure("constructed pencil fails the coefficient condition");
        json meta{{"kind", "odd"},
                  {"sigma", cfg.sigma},
                  {"s", s},
                  {"n", n},
                  {"involution", cfg.conjugate ? "conjugate-transpose" : "transpose"}};
        sl::save_json_file(cfg.out_path, sl::matpoly_to_json(l.assembled, meta));
        maybe_write_mm(cfg, sl::AnyMatPoly(l.assembled));
        return 0;
      },
      any);
}

int run_build_even(const RunConfig& cfg) {
  sl::AnyMatPoly any = sl::any_matpoly_from_json(sl::load_json_file(cfg.poly_path));
  return std::visit(
      [&](auto p) -> int {
        using S = std::decay_t<decltype(p.coeff(0)(0, 0))>;
        if (cfg.grade_override >= 0) p = p.regrade(cfg.grade_override);
        int d = p.grade(), n = p.rows();
        if (d % 2 != 0) throw std::invalid_argument("build-even: even grade required");
        int t = d / 2;
        auto w = load_w<S>(cfg.w_path);
        auto fp = load_free_params<S>(cfg.free_path, t, n);
        sl::MatPoly<S> assembled(1, 1, 1);
        if (cfg.trailing) {
          auto tv = sl::trailing_variant(p, cfg.sigma, involution_of(cfg), w, fp, cfg.tol);
          assembled = tv.assembled;
          if (!sl::check_conditions_even(tv.base, p.rev(d), cfg.tol).conditions())
            throw VerificationFailure("constructed pencil fails the even conditions");
        } else {
          auto l = sl::solve_even_structured(p, cfg.sigma, involution_of(cfg), w, fp, cfg.tol);
          assembled = l.assembled;
          if (!sl::check_conditions_even(l, p, cfg.tol).conditions())
            throw VerificationFailure("constructed pencil fails the even conditions");
        }
        json meta{{"kind", cfg.trailing ? "even-trailing" : "even"},
                  {"sigma", cfg.sigma},
                  {"t", t},
                  {"n", n},
                  {"involution", cfg.conjugate ? "conjugate-transpose" : "transpose"}};
        sl::save_json_file(cfg.out_path, sl::matpoly_to_json(assembled, meta));
        maybe_write_mm(cfg, sl::AnyMatPoly(assembled));
        return 0;
      },
      any);
}

int run_verify(const RunConfig& cfg) {
  json jl = sl::load_json_file(cfg.pencil_path);
  json jp = sl::load_json_file(cfg.poly_path);
  if (jl.at("field") != jp.at("field"))
    throw std::invalid_argument("pencil and polynomial use different scalar fields");
  sl::AnyMatPoly any = sl::any_matpoly_from_json(jp);
  return std::visit(
      [&](const auto& p) -> int {
        using S = std::decay_t<decltype(p.coeff(0)(0, 0))>;
        sl::MatPoly<S> l = sl::matpoly_from_json<S>(jl);
        int grade = cfg.grade_override >= 0 ? cfg.grade_override : p.grade();
        auto cert = sl::certificate(l, p.regrade(std::max(grade, p.grade())), grade, cfg.tol);
        json out{{"isLinearization", cert.is_linearization},
                 {"isStrong", cert.is_strong},
                 {"c", sl::entry_to_json(cert.ratio)},
                 {"cRev", sl::entry_to_json(cert.ratio_rev)},
                 {"detP", sl::poly_to_json(cert.det_p)},
                 {"detL", sl::poly_to_json(cert.det_l)},
                 {"detRevP", sl::poly_to_json(cert.det_rev_p)},
                 {"detRevL", sl::poly_to_json(cert.det_rev_l)},
                 {"notes", cert.notes}};
        if (!cfg.report_path.empty()) sl::save_json_file(cfg.report_path, out);
        std::cout << (cert.is_strong ? "strong linearization: certified\n"
                                     : "strong linearization: FAILED\n");
        return cert.is_strong ? 0 : 1;
      },
      any);
}

int run_recover(const RunConfig& cfg) {
  json jl = sl::load_json_file(cfg.pencil_path);
  if (!jl.contains("meta"))
    throw std::invalid_argument("pencil file carries no meta block; recover needs one");
  json meta = jl.at("meta");
  std::string kind = meta.at("kind").get<std::string>();
  int sigma = meta.at("sigma").get<int>();
  int n = meta.at("n").get<int>();
  sl::Involution inv = meta.at("involution").get<std::string>() == "conjugate-transpose"
                           ? sl::Involution::conjugate_transpose
                           : sl::Involution::transpose;
  sl::AnyMatPoly any = sl::any_matpoly_from_json(jl);
  return std::visit(
      [&](const auto& l) -> int {
        using S = std::decay_t<decltype(l.coeff(0)(0, 0))>;
        json out;
        std::optional<sl::MatPoly<S>> p;
        if (!cfg.poly_path.empty())
          p = sl::matpoly_from_json<S>(sl::load_json_file(cfg.poly_path));

        if (cfg.mode == "eig") {
          if (cfg.lambda_text.empty())
            throw std::invalid_argument("recover --mode eig needs --lambda (value or 'inf')");
          bool infinite = cfg.lambda_text == "inf";
          S lambda0 = infinite ? sl::scalar_traits<S>::zero() : parse_lambda<S>(cfg.lambda_text);
          sl::Matrix<S> at = infinite ? l.coeff(1) : l.eval(lambda0);
          auto ns = sl::nullspace_at(at, cfg.tol);
          out["kind"] = infinite ? "infinite-eigvec" : "finite-eigvec";
          out["lambda"] = cfg.lambda_text;
          json vecs = json::array(), residuals = json::array();
          for (const auto& z : ns) {
            std::vector<S> x;
            if (kind == "odd") {
              int s = meta.at("s").get<int>();
              sl::BlockKroneckerPencil<S> bk;
              bk.s = s;
              bk.n = n;
              bk.sigma = sigma;
              bk.involution = inv;
              x = sl::detail::take_block(z, infinite ? 0 : s, n);
            } else {
              int t = meta.at("t").get<int>();
              auto mode = kind == "even" ? sl::EvenMode::direct : sl::EvenMode::reversed;
              x = sl::recover_eigvec_even<S>(t, n, z, mode,
                                             infinite ? sl::EigWhich::infinite : sl::EigWhich::finite,
                                             infinite ? std::nullopt : std::optional<S>(lambda0));
            }
            json xv = json::array();
            for (const S& v : x) xv.push_back(sl::entry_to_json(v));
            vecs.push_back(std::move(xv));
            if (p && !infinite) residuals.push_back(sl::residual(*p, lambda0, x, cfg.tol));
          }
          out["vectors"] = std::move(vecs);
          if (!residuals.empty()) out["residuals"] = std::move(residuals);
        } else if (cfg.mode == "minbasis") {
          if (kind != "odd")
            throw std::invalid_argument(
                "minimal-basis recovery is established for odd-grade block Kronecker pencils only");
          if constexpr (!sl::scalar_traits<S>::exact) {
            throw std::invalid_argument("minimal-basis recovery requires an exact scalar kind");
          } else {
            int s = meta.at("s").get<int>();
            sl::BlockKroneckerPencil<S> bk;
            bk.s = s;
            bk.n = n;
            bk.sigma = sigma;
            bk.involution = inv;
            bk.assembled = l;
            auto nb = sl::minimal_nullspace_basis(l, cfg.max_degree, cfg.seed);
            auto rec = sl::recover_minimal_data(bk, nb);
            out["kind"] = "minimal-basis";
            out["indices"] = rec.indices;
            out["pencilIndices"] = nb.indices;
            json vecs = json::array();
            for (const auto& v : rec.vectors) vecs.push_back(sl::matpoly_to_json(v));
            out["vectors"] = std::move(vecs);
            if (!rec.diagnostics.empty()) out["diagnostics"] = rec.diagnostics;
          }
        } else {
          throw std::invalid_argument("recover mode must be 'eig' or 'minbasis'");
        }
        sl::save_json_file(cfg.out_path, out);
        return 0;
      },
      any);
}

int run_bases_make(const RunConfig& cfg) {
  sl::BasisTag tag;
  if (cfg.kind_text == "Lk") tag = sl::BasisTag::Lk;
  else if (cfg.kind_text == "Lambda") tag = sl::BasisTag::Lambda;
  else if (cfg.kind_text == "LkHat") tag = sl::BasisTag::LkHat;
  else if (cfg.kind_text == "LambdaHat") tag = sl::BasisTag::LambdaHat;
  else if (cfg.kind_text == "LambdaTilde") tag = sl::BasisTag::LambdaTilde;
  else if (cfg.kind_text == "Gamma") tag = sl::BasisTag::Gamma;
  else if (cfg.kind_text == "Nhat") tag = sl::BasisTag::Nhat;
  else throw std::invalid_argument("unknown basis kind '" + cfg.kind_text + "'");
  auto b = sl::make_basis<sl::Rational>({tag, cfg.basis_k, cfg.basis_n});
  sl::save_json_file(cfg.out_path, sl::matpoly_to_json(b));
  return 0;
}

int run_bases_check(const RunConfig& cfg) {
  sl::AnyMatPoly any = sl::any_matpoly_from_json(sl::load_json_file(cfg.matrix_path));
  return std::visit(
      [&](const auto& q) -> int {
        using S = std::decay_t<decltype(q.coeff(0)(0, 0))>;
        if constexpr (!sl::scalar_traits<S>::exact) {
          throw std::invalid_argument("bases check: exact arithmetic required");
        } else {
          auto rep = sl::is_minimal_basis(q);
          json out{{"verdict", rep.verdict},
                   {"rowReduced", rep.row_reduced},
                   {"fullRankEverywhere", rep.full_rank_everywhere},
                   {"rowDegrees", rep.row_degrees},
                   {"highestRowCoeff", sl::matrix_to_json(rep.highest_row_coeff)}};
          if (!cfg.report_path.empty()) sl::save_json_file(cfg.report_path, out);
          std::cout << (rep.verdict ? "minimal basis: yes\n" : "minimal basis: no\n");
          return rep.verdict ? 0 : 1;
        }
      },
      any);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure-preserving block Kronecker linearizations"};
  app.require_subcommand(1);
  RunConfig cfg;

  if (const char* env = std::getenv("STRUCTLIN_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "comparison tolerance for float kinds");
    uint64_t seed_flag = cfg.seed;
    sub->add_option("--seed", seed_flag, "seed for randomized internals")
        ->each([&cfg](const std::string& v) {
          if (!std::getenv("STRUCTLIN_SEED")) cfg.seed = std::strtoull(v.c_str(), nullptr, 10);
        });
  };

  CLI::App* odd = app.add_subcommand("build-odd", "structured pencil for odd-grade P");
  odd->add_option("--poly", cfg.poly_path)->required();
  odd->add_option("--sigma", cfg.sigma)->check(CLI::IsMember({1, -1}));
  odd->add_option("--template", cfg.template_name, "blockdiag|pentadiagonal|ex1|ex2");
  odd->add_option("--free", cfg.free_path, "free-parameter JSON for the structured solve");
  odd->add_flag("--hermitian", cfg.conjugate, "use the conjugate-transpose involution");
  odd->add_option("--grade", cfg.grade_override);
  odd->add_option("--out", cfg.out_path)->required();
  odd->add_option("--mm", cfg.mm_a_path, "Matrix Market path for the constant coefficient");
  odd->add_option("--mm-b", cfg.mm_b_path, "Matrix Market path for the leading coefficient");
  add_common(odd);

  CLI::App* even = app.add_subcommand("build-even", "structured pencil for even-grade P");
  even->add_option("--poly", cfg.poly_path)->required();
  even->add_option("--sigma", cfg.sigma)->check(CLI::IsMember({1, -1}));
  even->add_flag("--trailing", cfg.trailing, "reversal construction for nonsingular P_0");
  even->add_option("--W", cfg.w_path, "telescoping-row parameters JSON");
  even->add_option("--free", cfg.free_path);
  even->add_flag("--hermitian", cfg.conjugate);
  even->add_option("--grade", cfg.grade_override);
  even->add_option("--out", cfg.out_path)->required();
  even->add_option("--mm", cfg.mm_a_path);
  even->add_option("--mm-b", cfg.mm_b_path);
  add_common(even);

  CLI::App* verify = app.add_subcommand("verify", "determinant certificate for a pencil");
  verify->add_option("--pencil", cfg.pencil_path)->required();
  verify->add_option("--poly", cfg.poly_path)->required();
  verify->add_option("--grade", cfg.grade_override);
  verify->add_option("--report", cfg.report_path);
  add_common(verify);

  CLI::App* recover = app.add_subcommand("recover", "eigenvectors or minimal bases from a pencil");
  recover->add_option("--pencil", cfg.pencil_path)->required();
  recover->add_option("--mode", cfg.mode, "eig|minbasis")->required();
  recover->add_option("--lambda", cfg.lambda_text, "eigenvalue; 'inf' for infinity");
  recover->add_option("--poly", cfg.poly_path, "optional P for residual reporting");
  recover->add_option("--max-degree", cfg.max_degree);
  recover->add_option("--out", cfg.out_path)->required();
  add_common(recover);

  CLI::App* bases = app.add_subcommand("bases", "fixed dual-minimal-basis blocks");
  bases->require_subcommand(1);
  CLI::App* bmake = bases->add_subcommand("make", "emit a structural basis matrix");
  bmake->add_option("--kind", cfg.kind_text, "Lk|Lambda|LkHat|LambdaHat|LambdaTilde|Gamma|Nhat")
      ->required();
  bmake->add_option("--k", cfg.basis_k, "k (or s/t) parameter")->required();
  bmake->add_option("--n", cfg.basis_n);
  bmake->add_option("--out", cfg.out_path)->required();
  CLI::App* bcheck = bases->add_subcommand("check", "minimal-basis report for a matrix");
  bcheck->add_option("--matrix", cfg.matrix_path)->required();
  bcheck->add_option("--report", cfg.report_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (odd->parsed()) return run_build_odd(cfg);
    if (even->parsed()) return run_build_even(cfg);
    if (verify->parsed()) return run_verify(cfg);
    if (recover->parsed()) return run_recover(cfg);
    if (bases->parsed()) {
      if (bmake->parsed()) return run_bases_make(cfg);
      if (bcheck->parsed()) return run_bases_check(cfg);
    }
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
