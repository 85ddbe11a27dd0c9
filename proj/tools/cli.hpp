#pragma once

// Command-line front end. Kept in a header so the test suite can drive run_cli in-process.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "confnat/confnat.hpp"

namespace confnat::cli {

enum exit_code : int { ok = 0, usage = 1, domain_failure = 2, non_convergence = 3 };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough for every double to read back exactly.
inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// "RE,IM" -> complex. Grammar violations are usage errors; the disc invariant is checked by the
/// caller when it builds a disc_point.
inline complex parse_pair(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw usage_error(flag + " expects RE,IM (got '" + text + "')");
  }
  const auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw usage_error(flag + " expects RE,IM (got '" + text + "')");
    }
    if (used != s.size()) throw usage_error(flag + " expects RE,IM (got '" + text + "')");
    return v;
  };
  return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
}

inline disc_point parse_disc(const std::string& text, const std::string& flag) {
  const complex z = parse_pair(text, flag);
  try {
    return disc_point(z);
  } catch (const domain_error& e) {
    throw domain_error(flag + ": " + e.what());
  }
}

/// CSV with header "re,im". Rows that do not parse or leave the disc abort with their line number.
inline std::vector<disc_point> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open input file '" + path + "'");
  std::string line;
  const auto strip = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };
  if (!std::getline(in, line)) throw domain_error(path + ": empty file, expected header re,im");
  strip(line);
  if (line != "re,im") throw domain_error(path + ": header must be 're,im' (got '" + line + "')");

  std::vector<disc_point> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip(line);
    if (line.empty()) continue;
    const std::string where = path + " line " + std::to_string(line_no);
    complex z;
    try {
      z = parse_pair(line, where);
    } catch (const usage_error& e) {
      throw domain_error(e.what());
    }
    try {
      points.emplace_back(z);
    } catch (const domain_error& e) {
      throw domain_error(where + ": " + e.what());
    }
  }
  return points;
}

enum class format { csv, json };

/// Emits one table, either as CSV with a header row or as one JSON object per line.
class table_writer {
 public:
  table_writer(std::ostream& out, format f, std::vector<std::string> columns)
      : out_(out), format_(f), columns_(std::move(columns)) {
    if (format_ == format::csv) {
      for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
      out_ << '\n';
    }
  }

  void row(const std::vector<std::string>& cells) {
    if (format_ == format::csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
      out_ << '\n';
      return;
    }
    out_ << '{';
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ << (i ? "," : "") << '"' << columns_[i] << "\":" << cells[i];
    }
    out_ << "}\n";
  }

 private:
  std::ostream& out_;
  format format_;
  std::vector<std::string> columns_;
};

struct check_outcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Embedded identity suite behind `check`.
inline std::vector<check_outcome> run_identity_checks() {
  std::vector<check_outcome> results;

  {
    double worst = 0.0;
    for (double alpha : {1.5, 2.0, 3.0, 5.0, 10.0}) {
      for (int k = 0; k <= 9; ++k) {
        const double m = 0.1 * k;
        const double series = hyp2f1_aa1(alpha, m * m);
        const double circle = poisson_circle_integral(m, alpha);
        worst = std::max(worst, std::abs(series - circle) / circle);
      }
    }
    results.push_back({"hypergeometric-circle-identity", worst < 1e-9,
                       "max relative error " + fmt(worst)});
  }

  {
    rng_stream rng(1);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const disc_point a = disc_point::clamped(std::polar(0.95 * std::sqrt(rng.next_uniform()),
                                                          two_pi * rng.next_uniform()));
      const auto g = moebius_transform::involution(a);
      for (int i = 0; i < 100; ++i) {
        const disc_point z = disc_point::clamped(std::polar(0.95 * std::sqrt(rng.next_uniform()),
                                                            two_pi * rng.next_uniform()));
        worst = std::max(worst, std::abs(g(g(z)).value() - z.value()));
      }
    }
    results.push_back({"involution", worst < 1e-12, "max error " + fmt(worst)});
  }

  {
    double worst = 0.0;
    for (double alpha : {1.5, 2.0, 5.0}) {
      for (complex a : {complex(0.0, 0.0), complex(0.5, 0.0), complex(0.3, 0.6)}) {
        const conf_natural d(alpha, disc_point(a));
        const double mass = integrate_disc([&](const disc_point& z) { return d.pdf_lebesgue(z); });
        worst = std::max(worst, std::abs(mass - 1.0));
      }
    }
    results.push_back({"normalization", worst < 1e-6, "max |mass - 1| " + fmt(worst)});
  }

  {
    double worst = 0.0;
    for (complex a : {complex(0.5, 0.0), complex(-0.2, 0.7)}) {
      for (double b : {0.2, 0.5, 0.7, 0.9}) {
        const double n = std::norm(a);
        worst = std::max(worst, std::abs(radial_cdf_forms::alpha_two(n, b) -
                                         radial_cdf_forms::quadrature(2.0, n, b)));
      }
    }
    results.push_back({"radial-cdf-branches", worst < 1e-8, "max difference " + fmt(worst)});
  }

  return results;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Conformally natural distributions on the Poincare disc", "confnat"};
  app.require_subcommand(1);

  std::string fmt_name = "csv";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", fmt_name, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  double alpha = 0.0;
  std::string a_text = "0,0";
  std::size_t n = 0;
  std::uint64_t seed = rng_stream::default_seed;

  auto* sample = app.add_subcommand("sample", "Draw points from F(alpha, a)");
  sample->add_option("--alpha", alpha, "Concentration, > 1")->required();
  sample->add_option("--a", a_text, "Location RE,IM");
  sample->add_option("--n", n, "Number of draws")->required();
  sample->add_option("--seed", seed, "Stream seed (decimal u64)");
  add_format(sample);

  auto* wc_sample = app.add_subcommand("wc-sample", "Draw angles from the wrapped Cauchy law wC(a)");
  wc_sample->add_option("--a", a_text, "Location RE,IM");
  wc_sample->add_option("--n", n, "Number of draws")->required();
  wc_sample->add_option("--seed", seed, "Stream seed (decimal u64)");
  add_format(wc_sample);

  std::string z_text;
  std::string measure = "hyp";
  auto* pdf = app.add_subcommand("pdf", "Density of F(alpha, a) at z");
  pdf->add_option("--alpha", alpha)->required();
  pdf->add_option("--a", a_text);
  pdf->add_option("--z", z_text)->required();
  pdf->add_option("--measure", measure, "hyp: against tau dA; lebesgue: against dA")
      ->check(CLI::IsMember({"hyp", "lebesgue"}));

  double b = 0.0;
  auto* cdf = app.add_subcommand("cdf", "Radial probability P{|Z| < b}");
  cdf->add_option("--alpha", alpha)->required();
  cdf->add_option("--a", a_text);
  cdf->add_option("--b", b)->required();

  std::string g_a_text;
  double g_theta = 0.0;
  auto* push = app.add_subcommand("pushforward", "Parameters of F(alpha, a) pushed by an automorphism");
  push->add_option("--alpha", alpha)->required();
  push->add_option("--a", a_text);
  push->add_option("--g-a", g_a_text, "Automorphism parameter RE,IM")->required();
  push->add_option("--g-theta", g_theta, "Automorphism rotation (radians)")->required();
  add_format(push);

  std::string input;
  karcher_config kcfg;
  auto* karcher = app.add_subcommand("karcher", "Karcher mean of a CSV point cloud (header re,im)");
  karcher->add_option("--input", input)->required();
  karcher->add_option("--tol", kcfg.tol, "Stop when the gradient norm falls below this");
  karcher->add_option("--max-iter", kcfg.max_iter, "Iteration limit");
  add_format(karcher);

  std::optional<double> fixed_alpha;
  auto* fit = app.add_subcommand("fit", "Maximum-likelihood fit of (alpha, a), printed as JSON");
  fit->add_option("--input", input)->required();
  fit->add_option("--fixed-alpha", fixed_alpha, "Hold alpha at this value and fit only the location");

  std::string objective_name = "builtin:distance";
  std::string target_text;
  cem_config ccfg;
  auto* optimize = app.add_subcommand("optimize", "Cross-entropy minimisation over the disc");
  optimize->add_option("--objective", objective_name)->check(CLI::IsMember({"builtin:distance"}));
  optimize->add_option("--target", target_text, "Target RE,IM of builtin:distance")->required();
  optimize->add_option("--pop", ccfg.population, "Population per iteration");
  optimize->add_option("--iters", ccfg.iterations, "Number of iterations");
  optimize->add_option("--alpha0", ccfg.alpha0, "Initial concentration");
  optimize->add_option("--alpha-growth", ccfg.alpha_growth, "Concentration factor per iteration");
  optimize->add_option("--elite-frac", ccfg.elite_frac, "Fraction of the population kept as elites");
  optimize->add_option("--seed", seed, "Stream seed (decimal u64)");
  add_format(optimize);

  auto* check = app.add_subcommand("check", "Run the embedded identity suite");

  std::vector<const char*> argv;
  argv.push_back("confnat");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return usage;
  }

  const format fmt_kind = fmt_name == "json" ? format::json : format::csv;

  try {
    if (*sample) {
      const conf_natural d(alpha, parse_disc(a_text, "--a"));
      rng_stream rng(seed);
      table_writer w(out, fmt_kind, {"index", "re", "im", "radius"});
      for (std::size_t i = 0; i < n; ++i) {
        const disc_point z = d.sample(rng);
        w.row({std::to_string(i), cli::fmt(z.re()), cli::fmt(z.im()), cli::fmt(z.modulus())});
      }
    } else if (*wc_sample) {
      const wrapped_cauchy d(parse_disc(a_text, "--a"));
      rng_stream rng(seed);
      table_writer w(out, fmt_kind, {"index", "phi"});
      for (std::size_t i = 0; i < n; ++i) w.row({std::to_string(i), cli::fmt(d.sample(rng).phi())});
    } else if (*pdf) {
      const conf_natural d(alpha, parse_disc(a_text, "--a"));
      const disc_point z = parse_disc(z_text, "--z");
      out << cli::fmt(measure == "hyp" ? d.pdf_hyp(z) : d.pdf_lebesgue(z)) << '\n';
    } else if (*cdf) {
      const conf_natural d(alpha, parse_disc(a_text, "--a"));
      out << cli::fmt(d.radial_cdf(b)) << '\n';
    } else if (*push) {
      const conf_natural d(alpha, parse_disc(a_text, "--a"));
      const moebius_transform t(parse_disc(g_a_text, "--g-a"), g_theta);
      const conf_natural image = d.pushforward(t);
      table_writer w(out, fmt_kind, {"alpha", "re", "im"});
      w.row({cli::fmt(image.alpha()), cli::fmt(image.a().re()), cli::fmt(image.a().im())});
    } else if (*karcher) {
      const auto points = read_points(input);
      const disc_point m = karcher_mean(points, {}, kcfg);
      table_writer w(out, fmt_kind, {"re", "im"});
      w.row({cli::fmt(m.re()), cli::fmt(m.im())});
    } else if (*fit) {
      const auto points = read_points(input);
      const fit_result r = fit_mle(points, fixed_alpha);
      out << "{\"alpha_hat\":" << cli::fmt(r.alpha_hat) << ",\"a_re\":" << cli::fmt(r.a_hat.re())
          << ",\"a_im\":" << cli::fmt(r.a_hat.im())
          << ",\"log_likelihood\":" << cli::fmt(r.log_likelihood)
          << ",\"iterations\":" << r.iterations
          << ",\"converged\":" << (r.converged ? "true" : "false") << "}\n";
    } else if (*optimize) {
      const disc_point target = parse_disc(target_text, "--target");
      rng_stream rng(seed);
      const auto objective = [&](const disc_point& z) { return hyp_distance(z, target); };
      const cem_result r = cem_optimize(objective, ccfg, rng);
      table_writer w(out, fmt_kind, {"iteration", "a_re", "a_im", "alpha", "best_value"});
      for (const auto& row : r.trace) {
        w.row({std::to_string(row.iteration), cli::fmt(row.a.re()), cli::fmt(row.a.im()),
               cli::fmt(row.alpha), cli::fmt(row.best_value)});
      }
    } else if (*check) {
      bool all = true;
      for (const auto& c : run_identity_checks()) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
        all = all && c.passed;
      }
      return all ? ok : domain_failure;
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const non_convergence_error& e) {
    err << "error: " << e.what() << "; best iterate " << cli::fmt(e.best().real()) << ","
        << cli::fmt(e.best().imag()) << "\n";
    return non_convergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return domain_failure;
  }
  return ok;
}

}  // namespace confnat::cli
