// Command-line front end: `polarlink <experiment> [flags]` with a flat
// key=value config file (--config) behind every flag; a flag given on the
// command line wins over the file.  Exit codes: 0 success, 2 configuration
// error, 3 I/O or data-file error.
#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "polarlink/capacity.hpp"
#include "polarlink/errors.hpp"
#include "polarlink/simulation.hpp"
#include "polarlink/svg_plot.hpp"

namespace polarlink {

namespace detail {

inline FadingDistribution parse_dist(const std::string& text) {
  if (text == "halfnormal") return FadingDistribution::half_normal();
  if (text.rfind("fixedmu:", 0) == 0) {
    try {
      std::size_t pos = 0;
      const std::string value = text.substr(8);
      const double mu = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing junk");
      return FadingDistribution::fixed_mu(mu);
    } catch (const std::exception&) {
      throw ConfigError("bad --dist value '" + text +
                        "': expected fixedmu:<positive number>");
    }
  }
  throw ConfigError("bad --dist value '" + text +
                    "': expected halfnormal or fixedmu:<v>");
}

inline ConstructionMode parse_construction(const std::string& text,
                                           std::string* file_out) {
  if (text == "design-snr") return ConstructionMode::kDesignSnr;
  if (text == "point") return ConstructionMode::kPoint;
  if (text == "converted") return ConstructionMode::kConverted;
  if (text.rfind("file:", 0) == 0) {
    *file_out = text.substr(5);
    if (file_out->empty()) throw ConfigError("--construction file: needs a path");
    return ConstructionMode::kFromFile;
  }
  throw ConfigError("bad --construction value '" + text +
                    "': expected design-snr|point|converted|file:<path>");
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"polarlink: polar-code link simulator"};
  app.set_config("--config", "", "flat key=value config file (flags win)");
  app.allow_config_extras(false);

  std::string experiment;
  app.add_option("experiment", experiment,
                 "one of: awgn-ber fading-ber adapt-ber construct design-snr "
                 "asymptotic plot")
      ->required()
      ->check(CLI::IsMember({"awgn-ber", "fading-ber", "adapt-ber", "construct",
                             "design-snr", "asymptotic", "plot"}));

  int n = 1024;
  double rate = 0.36;
  double snr_start = -2.0, snr_stop = 8.0, snr_step = 1.0;
  std::string construction = "design-snr";
  bool systematic = false;
  std::string decoder = "exact";
  std::string dist_str;
  double alpha = 0.2;
  int cap_m = 64;
  long blocks = 100000;
  long errors = 100;
  int nb = 1;
  bool paper_compat = false;
  std::uint64_t seed = 1;
  std::string out, qs_out;
  std::string engine = "ga";
  double construct_snr = 0.0;
  long iters = 100000;
  int shards = 1;
  std::vector<std::string> plot_csvs, plot_labels;
  std::string x_col = "snr_db", y_col = "ber", title;
  bool linear_y = false;

  app.add_option("--n", n, "block length N (power of two)");
  app.add_option("--rate", rate, "code rate K/N target");
  app.add_option("--snr-start", snr_start, "sweep start, dB");
  app.add_option("--snr-stop", snr_stop, "sweep stop, dB (inclusive)");
  app.add_option("--snr-step", snr_step, "sweep step, dB");
  app.add_option("--construction", construction,
                 "design-snr | point | converted | file:<path>");
  app.add_flag("--systematic", systematic, "systematic encoding");
  app.add_option("--decoder", decoder, "exact | minsum")
      ->check(CLI::IsMember({"exact", "minsum"}));
  app.add_option("--dist", dist_str,
                 "gain law for fading experiments: halfnormal | fixedmu:<v>");
  app.add_option("--alpha", alpha, "rate adaptation gain threshold");
  app.add_option("--cap-m", cap_m, "rate adaptation cap M on counted bad gains");
  app.add_option("--blocks", blocks, "max codewords per SNR point");
  app.add_option("--errors", errors, "stop a point after this many bit errors");
  app.add_option("--nb", nb, "codewords per fading realization (N_b)");
  app.add_flag("--paper-compat", paper_compat,
               "use the flat -8 dB SNR conversion instead of 20*log10(mu)");
  app.add_option("--seed", seed, "master RNG seed");
  app.add_option("--out", out, "output path (CSV or SVG); default stdout");
  app.add_option("--qs-out", qs_out, "where construct writes the ranking");
  app.add_option("--engine", engine, "construct engine: ga | mc")
      ->check(CLI::IsMember({"ga", "mc"}));
  auto* snr_opt = app.add_option(
      "--snr", construct_snr,
      "construction SNR in dB (construct; default: design SNR of --rate)");
  app.add_option("--iters", iters, "Monte-Carlo construction iterations");
  app.add_option("--shards", shards, "Monte-Carlo construction RNG shards");
  app.add_option("--csv", plot_csvs, "plot: input CSV (repeatable)");
  app.add_option("--label", plot_labels, "plot: legend label per CSV");
  app.add_option("--x-col", x_col, "plot: x column name");
  app.add_option("--y-col", y_col, "plot: y column name");
  app.add_flag("--linear-y", linear_y, "plot: linear y axis instead of log");
  app.add_option("--title", title, "plot: chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (experiment == "plot") {
      if (out.empty()) throw ConfigError("plot requires --out <svg path>");
      if (plot_labels.empty()) plot_labels = plot_csvs;
      PlotOptions opt;
      opt.x_col = x_col;
      opt.y_col = y_col;
      opt.log_y = !linear_y;
      opt.title = title;
      try {
        emit_plot(plot_csvs, plot_labels, out, opt);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      return 0;
    }

    ExperimentConfig cfg;
    cfg.big_n = n;
    cfg.rate = rate;
    cfg.snr_start_db = snr_start;
    cfg.snr_stop_db = snr_stop;
    cfg.snr_step_db = snr_step;
    cfg.construction = detail::parse_construction(construction, &cfg.construction_file);
    cfg.systematic = systematic;
    cfg.decoder = decoder == "minsum" ? DecoderRule::kMinSum : DecoderRule::kExact;
    cfg.alpha = alpha;
    cfg.cap_m = cap_m;
    cfg.max_blocks = blocks;
    cfg.max_bit_errors = errors;
    cfg.n_b = nb;
    cfg.paper_compat = paper_compat;
    cfg.seed = seed;
    cfg.out_path = out;
    cfg.qs_out_path = qs_out;
    cfg.engine = engine;
    if (snr_opt->count() > 0) cfg.construct_snr_db = construct_snr;
    cfg.mc_iters = iters;
    cfg.mc_shards = shards;

    if (experiment == "awgn-ber") {
      cfg.kind = ExperimentKind::kAwgnBer;
      cfg.dist = std::nullopt;  // dedicated no-fading path
    } else if (experiment == "fading-ber" || experiment == "adapt-ber") {
      cfg.kind = experiment == "adapt-ber" ? ExperimentKind::kAdaptBer
                                           : ExperimentKind::kFadingBer;
      cfg.dist = dist_str.empty() ? FadingDistribution::half_normal()
                                  : detail::parse_dist(dist_str);
    } else if (experiment == "construct") {
      cfg.kind = ExperimentKind::kConstruct;
      if (!dist_str.empty()) cfg.dist = detail::parse_dist(dist_str);
    } else if (experiment == "asymptotic") {
      cfg.kind = ExperimentKind::kAsymptotic;
      cfg.dist = dist_str.empty() ? FadingDistribution::half_normal()
                                  : detail::parse_dist(dist_str);
    } else if (experiment == "design-snr") {
      cfg.kind = ExperimentKind::kDesignSnr;
    }

    switch (cfg.kind) {
      case ExperimentKind::kAwgnBer:
      case ExperimentKind::kFadingBer:
      case ExperimentKind::kAdaptBer: {
        const std::string csv = format_csv(run_experiment(cfg));
        if (cfg.out_path.empty())
          std::cout << csv;
        else
          detail::write_text_file(cfg.out_path, csv);
        break;
      }
      case ExperimentKind::kConstruct: {
        if (cfg.qs_out_path.empty())
          throw ConfigError("construct requires --qs-out <path>");
        const ReliabilityOrder qs = run_construct(cfg);
        std::cout << "wrote " << cfg.qs_out_path << " (N=" << qs.meta.big_n
                  << " engine=" << qs.meta.engine
                  << " snr_db=" << detail::format_g6(qs.meta.snr_db) << ")\n";
        break;
      }
      case ExperimentKind::kDesignSnr: {
        const SnrPoint snr = design_snr(cfg.rate);
        const std::string line = "rate=" + detail::format_g6(cfg.rate) +
                                 " design_snr_db=" +
                                 detail::format_g6(snr.gamma_db) + "\n";
        std::cout << line;
        if (!cfg.out_path.empty())
          detail::write_text_file(cfg.out_path,
                                  "rate,design_snr_db\n" +
                                      detail::format_g6(cfg.rate) + "," +
                                      detail::format_g6(snr.gamma_db) + "\n");
        break;
      }
      case ExperimentKind::kAsymptotic: {
        const std::string csv = format_asymptotic_csv(cfg);
        if (cfg.out_path.empty())
          std::cout << csv;
        else
          detail::write_text_file(cfg.out_path, csv);
        break;
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace polarlink
