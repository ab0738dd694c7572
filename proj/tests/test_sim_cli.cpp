#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "polarlink/cli.hpp"
#include "polarlink/simulation.hpp"
#include "polarlink/svg_plot.hpp"

using namespace polarlink;
using Catch::Approx;

namespace {

int call_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("polarlink");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

ExperimentConfig small_awgn() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kAwgnBer;
  cfg.big_n = 64;
  cfg.rate = 0.5;
  cfg.snr_start_db = 0.0;
  cfg.snr_stop_db = 2.0;
  cfg.snr_step_db = 1.0;
  cfg.max_blocks = 128;
  cfg.max_bit_errors = 1000000;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("format_csv layout: header only, then one row per point") {
  CHECK(format_csv(SweepResult{}) ==
        "snr_db,blocks,bit_errors,ber,block_errors,bler,effective_rate\n");

  SweepResult one;
  SweepPoint p;
  p.snr_db = 1.5;
  p.blocks = 1000000;  // large ints must not fall into scientific notation
  p.bit_errors = 1234567;
  p.ber = 0.000123456;
  p.block_errors = 7;
  p.bler = 0.25;
  p.effective_rate = 0.36;
  one.points.push_back(p);
  CHECK(format_csv(one) ==
        "snr_db,blocks,bit_errors,ber,block_errors,bler,effective_rate\n"
        "1.5,1000000,1234567,0.000123456,7,0.25,0.36\n");
}

TEST_CASE("run_experiment validates its configuration") {
  ExperimentConfig cfg = small_awgn();
  cfg.big_n = 100;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_awgn();
  cfg.rate = 0.0;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_awgn();
  cfg.rate = 0.001;  // floor(64 * 0.001) = 0 information bits
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_awgn();
  cfg.snr_step_db = 0.0;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_awgn();
  cfg.snr_stop_db = cfg.snr_start_db - 1.0;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_awgn();
  cfg.max_blocks = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_awgn();
  cfg.max_bit_errors = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_awgn();
  cfg.kind = ExperimentKind::kConstruct;
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg = small_awgn();
  cfg.construction = ConstructionMode::kConverted;  // needs a distribution
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("run_experiment sweeps the requested grid and is deterministic") {
  const ExperimentConfig cfg = small_awgn();
  const SweepResult a = run_experiment(cfg);
  const SweepResult b = run_experiment(cfg);
  REQUIRE(a.points.size() == 3);
  CHECK(a.points[0].snr_db == Approx(0.0));
  CHECK(a.points[1].snr_db == Approx(1.0));
  CHECK(a.points[2].snr_db == Approx(2.0));
  for (const SweepPoint& p : a.points) {
    CHECK(p.blocks == 128);
    CHECK(p.effective_rate == Approx(0.5));
    CHECK(p.ber >= 0.0);
    CHECK(p.ber <= 1.0);
    CHECK(p.bler >= p.ber);  // any bit error marks the whole block
  }
  // Errors shrink with SNR on this grid (wide spacing, plenty of blocks).
  CHECK(a.points[2].bit_errors < a.points[0].bit_errors);
  CHECK(format_csv(a) == format_csv(b));
  // A different seed gives different noise.
  ExperimentConfig other = cfg;
  other.seed = 6;
  CHECK(format_csv(run_experiment(other)) != format_csv(a));
}

TEST_CASE("fixed-mu(1) fading reproduces the AWGN path bit for bit") {
  ExperimentConfig awgn = small_awgn();
  ExperimentConfig faded = small_awgn();
  faded.kind = ExperimentKind::kFadingBer;
  faded.dist = FadingDistribution::fixed_mu(1.0);
  CHECK(format_csv(run_experiment(awgn)) == format_csv(run_experiment(faded)));

  // Same equivalence under systematic encoding and min-sum decoding.
  awgn.systematic = true;
  awgn.decoder = DecoderRule::kMinSum;
  faded.systematic = true;
  faded.decoder = DecoderRule::kMinSum;
  CHECK(format_csv(run_experiment(awgn)) == format_csv(run_experiment(faded)));
}

TEST_CASE("early stop at the bit-error target stays statistically consistent") {
  ExperimentConfig stopped;
  stopped.kind = ExperimentKind::kAwgnBer;
  stopped.big_n = 128;
  stopped.rate = 0.5;
  stopped.snr_start_db = 0.0;
  stopped.snr_stop_db = 0.0;
  stopped.snr_step_db = 1.0;
  stopped.max_blocks = 100000;
  stopped.max_bit_errors = 100;
  stopped.seed = 21;
  const SweepPoint a = run_experiment(stopped).points.at(0);
  REQUIRE(a.bit_errors >= 100);
  REQUIRE(a.blocks < stopped.max_blocks);  // the stop actually triggered
  CHECK(a.blocks % kBatchBlocks == 0);     // quantized to batch boundaries

  ExperimentConfig longer = stopped;
  longer.max_bit_errors = 1000000000;
  longer.max_blocks = 10 * a.blocks;
  longer.seed = 22;  // independent run
  const SweepPoint b = run_experiment(longer).points.at(0);

  auto half_width = [](const SweepPoint& p) {
    const double bits = static_cast<double>(p.bit_errors) / p.ber;
    return 1.96 * std::sqrt(p.ber * (1.0 - p.ber) / bits);
  };
  const double lo_a = a.ber - half_width(a), hi_a = a.ber + half_width(a);
  const double lo_b = b.ber - half_width(b), hi_b = b.ber + half_width(b);
  INFO("stopped: " << a.ber << " [" << lo_a << "," << hi_a << "]  long: "
                   << b.ber << " [" << lo_b << "," << hi_b << "]");
  CHECK(std::max(lo_a, lo_b) <= std::min(hi_a, hi_b));
}

TEST_CASE("adapt-ber trims the effective rate under fading") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::kAdaptBer;
  cfg.big_n = 256;
  cfg.rate = 0.36;
  cfg.snr_start_db = 8.0;
  cfg.snr_stop_db = 8.0;
  cfg.snr_step_db = 1.0;
  cfg.construction = ConstructionMode::kConverted;
  cfg.dist = FadingDistribution::half_normal();
  cfg.alpha = 0.2;
  cfg.cap_m = 64;
  cfg.max_blocks = 256;
  cfg.max_bit_errors = 1000000;
  cfg.seed = 33;
  const SweepPoint adapted = run_experiment(cfg).points.at(0);

  ExperimentConfig base = cfg;
  base.kind = ExperimentKind::kFadingBer;
  const SweepPoint plain = run_experiment(base).points.at(0);

  CHECK(plain.effective_rate == Approx(92.0 / 256.0));
  CHECK(adapted.effective_rate < plain.effective_rate);
  CHECK(adapted.effective_rate > 0.5 * plain.effective_rate);
}

TEST_CASE("emit_csv writes the formatted table") {
  const ExperimentConfig cfg = small_awgn();
  const SweepResult r = run_experiment(cfg);
  const std::string path = "sweep_out_test.tmp";
  emit_csv(r, path);
  CHECK(slurp(path) == format_csv(r));
  std::remove(path.c_str());
}

TEST_CASE("format_asymptotic_csv builds the rate grid per SNR") {
  ExperimentConfig cfg;
  cfg.big_n = 1024;
  cfg.snr_start_db = 0.0;
  cfg.snr_stop_db = 8.0;
  cfg.snr_step_db = 2.0;
  const std::string csv = format_asymptotic_csv(cfg);
  CHECK(count_lines(csv) == 1 + 5 * 19);
  CHECK(csv.rfind("snr_db,rate,log2_pe,pe\n", 0) == 0);
  // First data row: snr 0, rate 0.05.
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  CHECK(line.rfind("0,0.05,", 0) == 0);
  // Every row's pe must equal 2^log2_pe.  Compare in the log domain: the
  // columns are %.6g renderings, so log2_pe carries an absolute quantization
  // of ~5e-6*|log2_pe|, and pe can land in the subnormal range where both
  // std::stod refuses to parse (ERANGE) and the value quantum itself is
  // coarse -- hence strtod and the widened tolerance below 1e-307.
  while (std::getline(in, line)) {
    const std::vector<std::string> f = detail::split_csv_line(line);
    REQUIRE(f.size() == 4);
    const double log2_pe = std::strtod(f[2].c_str(), nullptr);
    const double pe = std::strtod(f[3].c_str(), nullptr);
    CHECK(log2_pe <= 0.0);
    if (pe == 0.0) {
      CHECK(log2_pe < -1060.0);  // below double range entirely
    } else {
      const double tol = 1e-4 + 6e-6 * std::fabs(log2_pe) +
                         (pe < 1e-307 ? 0.1 : 0.0);
      CHECK(std::log2(pe) == Approx(log2_pe).margin(tol));
    }
  }
}

TEST_CASE("emit_plot draws one polyline per series") {
  spit("plot_a.tmp.csv", "snr_db,ber\n0,0.1\n1,0.01\n");
  spit("plot_b.tmp.csv", "snr_db,ber\n0,0.2\n1,0.02\n2,0.002\n");
  emit_plot({"plot_a.tmp.csv", "plot_b.tmp.csv"}, {"a", "b"}, "plot_test.tmp.svg");
  const std::string svg = slurp("plot_test.tmp.svg");
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(count_occurrences(svg, "<circle") == 5);
  CHECK(svg.find(">a</text>") != std::string::npos);
  CHECK(svg.find(">b</text>") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") != std::string::npos);

  // A two-point series yields a polyline with exactly two vertices.
  const std::size_t poly = svg.find("<polyline");
  const std::size_t pts = svg.find("points=\"", poly) + 8;
  const std::size_t end = svg.find('"', pts);
  const std::string coords = svg.substr(pts, end - pts);
  CHECK(count_occurrences(coords, ",") == 2);
  CHECK(count_occurrences(coords, " ") == 1);

  std::remove("plot_a.tmp.csv");
  std::remove("plot_b.tmp.csv");
  std::remove("plot_test.tmp.svg");
}

TEST_CASE("emit_plot clamps zero BER to the log floor") {
  // One point at the floor value and one at zero: both must land on the
  // same y coordinate.
  spit("plot_floor.tmp.csv", "snr_db,ber\n0,1e-8\n1,0\n");
  emit_plot({"plot_floor.tmp.csv"}, {"s"}, "plot_floor.tmp.svg");
  const std::string svg = slurp("plot_floor.tmp.svg");
  const std::size_t pts = svg.find("points=\"") + 8;
  const std::string coords = svg.substr(pts, svg.find('"', pts) - pts);
  // coords = "x1,y1 x2,y2"
  const std::size_t sp = coords.find(' ');
  const std::string y1 = coords.substr(coords.find(',') + 1, sp - coords.find(',') - 1);
  const std::string y2 = coords.substr(coords.find(',', sp) + 1);
  CHECK(y1 == y2);
  std::remove("plot_floor.tmp.csv");
  std::remove("plot_floor.tmp.svg");
}

TEST_CASE("emit_plot rejects bad inputs") {
  spit("plot_c.tmp.csv", "snr_db,ber\n0,0.1\n");
  CHECK_THROWS_AS(emit_plot({}, {}, "x.svg"), std::invalid_argument);
  CHECK_THROWS_AS(emit_plot({"plot_c.tmp.csv"}, {"a", "b"}, "x.svg"),
                  std::invalid_argument);
  CHECK_THROWS_AS(emit_plot({"no_such_file.csv"}, {"a"}, "x.svg"), IoError);

  spit("plot_bad.tmp.csv", "snr_db,ber\n0,0.1\n1\n");
  CHECK_THROWS_WITH(emit_plot({"plot_bad.tmp.csv"}, {"a"}, "x.svg"),
                    Catch::Matchers::ContainsSubstring("plot_bad.tmp.csv:3"));
  spit("plot_bad.tmp.csv", "snr_db,ber\n0,abc\n");
  CHECK_THROWS_AS(emit_plot({"plot_bad.tmp.csv"}, {"a"}, "x.svg"), ParseError);
  spit("plot_bad.tmp.csv", "foo,bar\n0,0.1\n");
  CHECK_THROWS_AS(emit_plot({"plot_bad.tmp.csv"}, {"a"}, "x.svg"), ParseError);
  std::remove("plot_c.tmp.csv");
  std::remove("plot_bad.tmp.csv");
}

TEST_CASE("CLI: happy paths exit 0 and write their artifacts") {
  SECTION("design-snr") {
    CHECK(call_cli({"design-snr", "--rate", "0.36", "--out", "dsnr.tmp.csv"}) == 0);
    const std::string body = slurp("dsnr.tmp.csv");
    CHECK(body.rfind("rate,design_snr_db\n0.36,-1.82", 0) == 0);
    std::remove("dsnr.tmp.csv");
  }
  SECTION("awgn-ber with an output file") {
    CHECK(call_cli({"awgn-ber", "--n", "16", "--rate", "0.5", "--snr-start", "0",
                    "--snr-stop", "2", "--snr-step", "1", "--blocks", "64",
                    "--errors", "1000000", "--out", "cli_awgn.tmp.csv"}) == 0);
    const std::string body = slurp("cli_awgn.tmp.csv");
    CHECK(count_lines(body) == 4);
    CHECK(body.rfind("snr_db,", 0) == 0);
    std::remove("cli_awgn.tmp.csv");
  }
  SECTION("construct, then run from the saved ranking") {
    CHECK(call_cli({"construct", "--n", "16", "--snr", "0",
                    "--qs-out", "cli_qs.tmp"}) == 0);
    const ReliabilityOrder qs = load_order("cli_qs.tmp");
    CHECK(qs.meta.big_n == 16);
    CHECK(qs.meta.engine == "ga");
    CHECK(call_cli({"awgn-ber", "--n", "16", "--rate", "0.5",
                    "--construction", "file:cli_qs.tmp", "--snr-start", "1",
                    "--snr-stop", "1", "--blocks", "64", "--errors", "1000000",
                    "--out", "cli_file.tmp.csv"}) == 0);
    std::remove("cli_qs.tmp");
    std::remove("cli_file.tmp.csv");
  }
  SECTION("construct with the Monte-Carlo engine") {
    CHECK(call_cli({"construct", "--n", "8", "--engine", "mc", "--iters", "200",
                    "--seed", "3", "--snr", "1", "--qs-out", "cli_mc.tmp"}) == 0);
    const ReliabilityOrder qs = load_order("cli_mc.tmp");
    CHECK(qs.meta.engine == "mc");
    REQUIRE(qs.meta.seed.has_value());
    CHECK(*qs.meta.seed == 3);
    std::remove("cli_mc.tmp");
  }
  SECTION("asymptotic table") {
    CHECK(call_cli({"asymptotic", "--n", "1024", "--snr-start", "0",
                    "--snr-stop", "4", "--snr-step", "2",
                    "--out", "cli_asym.tmp.csv"}) == 0);
    CHECK(count_lines(slurp("cli_asym.tmp.csv")) == 1 + 3 * 19);
    std::remove("cli_asym.tmp.csv");
  }
  SECTION("plot") {
    spit("cli_plot.tmp.csv", "snr_db,ber\n0,0.1\n1,0.01\n");
    CHECK(call_cli({"plot", "--csv", "cli_plot.tmp.csv", "--label", "run",
                    "--out", "cli_plot.tmp.svg"}) == 0);
    CHECK(slurp("cli_plot.tmp.svg").find("<polyline") != std::string::npos);
    std::remove("cli_plot.tmp.csv");
    std::remove("cli_plot.tmp.svg");
  }
}

TEST_CASE("CLI: config file keys bind to flags, command line wins") {
  spit("cli_cfg.tmp",
       "n=16\nrate=0.5\nsnr-start=0\nsnr-stop=2\nsnr-step=1\nblocks=64\n"
       "errors=1000000\nout=cli_cfg_out.tmp.csv\n");
  CHECK(call_cli({"awgn-ber", "--config", "cli_cfg.tmp"}) == 0);
  CHECK(count_lines(slurp("cli_cfg_out.tmp.csv")) == 4);  // 3 points + header

  // The explicit flag overrides the file's snr-stop.
  CHECK(call_cli({"awgn-ber", "--config", "cli_cfg.tmp", "--snr-stop", "0"}) == 0);
  CHECK(count_lines(slurp("cli_cfg_out.tmp.csv")) == 2);  // 1 point + header
  std::remove("cli_cfg_out.tmp.csv");

  // Unknown keys in the file are configuration errors.
  spit("cli_cfg_bad.tmp", "n=16\nbogus-key=3\n");
  CHECK(call_cli({"awgn-ber", "--config", "cli_cfg_bad.tmp"}) == 2);
  std::remove("cli_cfg.tmp");
  std::remove("cli_cfg_bad.tmp");
}

TEST_CASE("CLI: configuration errors exit 2") {
  CHECK(call_cli({}) == 2);                              // missing experiment
  CHECK(call_cli({"bogus"}) == 2);                       // unknown experiment
  CHECK(call_cli({"awgn-ber", "--decoder", "fancy"}) == 2);
  CHECK(call_cli({"awgn-ber", "--n", "100", "--out", "never.tmp"}) == 2);
  CHECK(call_cli({"awgn-ber", "--snr-step", "0", "--out", "never.tmp"}) == 2);
  CHECK(call_cli({"awgn-ber", "--errors", "0", "--out", "never.tmp"}) == 2);
  CHECK(call_cli({"fading-ber", "--dist", "junk", "--out", "never.tmp"}) == 2);
  CHECK(call_cli({"fading-ber", "--dist", "fixedmu:-1", "--out", "never.tmp"}) == 2);
  CHECK(call_cli({"awgn-ber", "--construction", "sideways", "--out", "never.tmp"}) == 2);
  CHECK(call_cli({"construct", "--n", "16"}) == 2);      // missing --qs-out
  CHECK(call_cli({"plot", "--csv", "x.csv"}) == 2);      // missing --out
  CHECK(call_cli({"awgn-ber", "--config", "no_such_config.tmp"}) == 2);
  CHECK(call_cli({"--help"}) == 0);                      // help is a success
}

TEST_CASE("CLI: I/O and data errors exit 3") {
  // Ranking file that does not exist.
  CHECK(call_cli({"awgn-ber", "--n", "16", "--rate", "0.5", "--construction",
                  "file:missing_ranking.tmp", "--snr-start", "0", "--snr-stop",
                  "0", "--blocks", "64", "--out", "never.tmp"}) == 3);
  // Ranking file that exists but is corrupt.
  spit("corrupt_ranking.tmp", "polar-qs v1\nN=16 snr_db=0 engine=ga seed=-\n0\n0\n");
  CHECK(call_cli({"awgn-ber", "--n", "16", "--rate", "0.5", "--construction",
                  "file:corrupt_ranking.tmp", "--snr-start", "0", "--snr-stop",
                  "0", "--blocks", "64", "--out", "never.tmp"}) == 3);
  std::remove("corrupt_ranking.tmp");
  // Unwritable output path.
  CHECK(call_cli({"design-snr", "--rate", "0.5",
                  "--out", "no_such_dir.tmp/x.csv"}) == 3);
}
