#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "armour/design.hpp"
#include "armour/report.hpp"
#include "armour/runner.hpp"

using armour::cplx;

namespace fs = std::filesystem;

namespace {

const std::string kDataDir = ARMOUR_LOSS_DATA_DIR;

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string table_text() { return read_file(kDataDir + "/curve_a_mu150.cfg"); }

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
  const auto pos = text.find(key);
  EXPECT_NE(pos, std::string::npos) << key;
  const auto end = text.find('\n', pos);
  return text.replace(pos, end - pos, line);
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("armour_loss_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

int run_cli(const std::string& args, const fs::path& out = "/dev/null") {
  const std::string cmd =
      std::string(ARMOUR_LOSS_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void expect_same(const armour::CableDesign& a, const armour::CableDesign& b) {
  EXPECT_EQ(a.layout.helix_radius, b.layout.helix_radius);
  EXPECT_EQ(a.layout.pitch, b.layout.pitch);
  EXPECT_EQ(a.layout.current, b.layout.current);
  EXPECT_EQ(a.layout.omega, b.layout.omega);
  EXPECT_EQ(a.layout.sequence, b.layout.sequence);
  EXPECT_EQ(a.armour.wire_count, b.armour.wire_count);
  EXPECT_EQ(a.armour.wire_radius, b.armour.wire_radius);
  EXPECT_EQ(a.armour.mean_radius, b.armour.mean_radius);
  EXPECT_EQ(a.armour.pitch, b.armour.pitch);
  EXPECT_EQ(a.armour.conductivity, b.armour.conductivity);
  EXPECT_EQ(a.armour.mu_r, b.armour.mu_r);
  EXPECT_EQ(a.armour.omega, b.armour.omega);
  EXPECT_EQ(a.r_ac, b.r_ac);
  EXPECT_EQ(a.solver.m_max, b.solver.m_max);
  EXPECT_EQ(a.solver.transverse_order, b.solver.transverse_order);
  EXPECT_EQ(a.solver.tail_tol, b.solver.tail_tol);
  EXPECT_EQ(a.solver.coupling, b.solver.coupling);
  EXPECT_EQ(a.solver.validity_factor, b.solver.validity_factor);
}

}  // namespace

TEST(Config, ParsesExampleDesign) {
  const auto d = armour::parse_design(table_text());
  EXPECT_EQ(d.layout.helix_radius, 0.05225);
  EXPECT_EQ(d.layout.pitch, 1.2);
  EXPECT_EQ(d.armour.wire_count, 135);
  EXPECT_EQ(d.armour.pitch, -100.0);
  EXPECT_EQ(d.armour.mu_r, cplx(150.0, -50.0));
  EXPECT_EQ(d.armour.omega, d.layout.omega);
  ASSERT_TRUE(d.r_ac.has_value());
  EXPECT_EQ(*d.r_ac, 4e-5);
  EXPECT_EQ(d.solver.coupling, armour::CouplingModel::along_field);
}

TEST(Config, RoundTripIsExact) {
  for (const char* name : {"curve_a_mu150.cfg", "curve_b_mu600.cfg", "curve_c_mu150.cfg"}) {
    const auto d = armour::load_design(kDataDir + "/" + name);
    const std::string text = armour::serialize_design(d);
    const auto back = armour::parse_design(text);
    expect_same(d, back);
    EXPECT_EQ(armour::serialize_design(back), text);
  }
  auto d = armour::parse_design(table_text());
  d.layout.pitch = 0.1 + 0.2;  // not representable in few digits
  d.armour.mu_r = {1000.0 / 3.0, -2.0 / 7.0};
  d.r_ac.reset();
  d.layout.sequence = armour::PhaseSequence::negative;
  d.solver.coupling = armour::CouplingModel::printed;
  expect_same(d, armour::parse_design(armour::serialize_design(d)));
}

TEST(Config, OptionalKeysTakeDefaults) {
  std::string text = table_text();
  for (const char* key : {"solver.m_max", "solver.transverse_order", "solver.tail_tol",
                          "solver.coupling", "conductor.r_ac_ohm_m"}) {
    text = replace_line(text, key, "");
  }
  const auto d = armour::parse_design(text);
  EXPECT_FALSE(d.r_ac.has_value());
  EXPECT_EQ(d.solver.m_max, 30);
  EXPECT_EQ(d.solver.transverse_order, 1);
  EXPECT_EQ(d.solver.tail_tol, 1e-10);
}

TEST(Config, Errors) {
  const std::string base = table_text();
  auto expect_error = [](const std::string& text, const std::string& fragment) {
    try {
      armour::parse_design(text);
      ADD_FAILURE() << "no error for fragment " << fragment;
    } catch (const armour::ValidationError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  expect_error(base + "armour.colour = grey\n", "armour.colour");
  expect_error(base + "armour.wire_count = 12\n", "duplicate");
  expect_error(replace_line(base, "armour.mean_radius_m", ""), "armour.mean_radius_m");
  expect_error(replace_line(base, "armour.wire_count", "armour.wire_count = 13.5"),
               "armour.wire_count");
  expect_error(replace_line(base, "armour.mu_r", "armour.mu_r = 150;-50"), "armour.mu_r");
  expect_error(replace_line(base, "cores.sequence", "cores.sequence = sideways"), "sequence");
  expect_error(base + "just some words\n", "line");
  expect_error(replace_line(base, "armour.wire_count", "armour.wire_count = 200"), "overlap");
  expect_error(replace_line(base, "solver.m_max", "solver.m_max = 64"), "m_max");
  expect_error(replace_line(base, "solver.transverse_order", "solver.transverse_order = 0"),
               "transverse");
  expect_error(replace_line(base, "conductor.r_ac_ohm_m", "conductor.r_ac_ohm_m = 0"), "r_ac");
  EXPECT_THROW(armour::load_design("/nonexistent/design.cfg"), armour::ValidationError);
}

TEST(Sweep, ParsesValueForms) {
  using armour::SweepParameter;
  EXPECT_EQ(armour::parse_sweep_parameter("N"), SweepParameter::wire_count);
  EXPECT_EQ(armour::parse_sweep_parameter("mu_r"), SweepParameter::mu_r);
  EXPECT_THROW(armour::parse_sweep_parameter("colour"), armour::ValidationError);
  const auto range = armour::parse_sweep_values(SweepParameter::wire_count, "25:135:10");
  ASSERT_EQ(range.size(), 12U);
  EXPECT_EQ(range.front(), cplx(25.0));
  EXPECT_EQ(range.back(), cplx(135.0));
  const auto list = armour::parse_sweep_values(SweepParameter::armour_pitch, "-100, -4,-2.4");
  ASSERT_EQ(list.size(), 3U);
  EXPECT_EQ(list[2], cplx(-2.4));
  const auto mu = armour::parse_sweep_values(SweepParameter::mu_r, "150,-50;600,-350");
  ASSERT_EQ(mu.size(), 2U);
  EXPECT_EQ(mu[1], cplx(600.0, -350.0));
  EXPECT_THROW(armour::parse_sweep_values(SweepParameter::wire_count, ""), armour::ValidationError);
  EXPECT_THROW(armour::parse_sweep_values(SweepParameter::wire_count, "1:10:0"),
               armour::ValidationError);
  EXPECT_THROW(armour::parse_sweep_values(SweepParameter::wire_count, "a,b"),
               armour::ValidationError);
  const auto d = armour::parse_design(table_text());
  EXPECT_THROW(armour::apply_sweep_value(d, SweepParameter::wire_count, 12.5),
               armour::ValidationError);
  EXPECT_EQ(armour::apply_sweep_value(d, SweepParameter::core_pitch, 4.0).layout.pitch, 4.0);
}

TEST(Runner, ZeroCurrentGivesZeroLoss) {
  auto d = armour::parse_design(table_text());
  d.layout.current = 0.0;
  const auto r = armour::run_single(d);
  EXPECT_EQ(r.loss.delta_S, cplx(0.0));
  ASSERT_TRUE(r.lambda2.has_value());
  EXPECT_EQ(r.lambda2->value, 0.0);
}

TEST(Runner, TailToleranceIsEnforced) {
  auto d = armour::parse_design(table_text());
  d.solver.m_max = 2;
  EXPECT_THROW(armour::run_single(d), armour::NumericalError);
  d.solver.tail_tol = 1.0;
  EXPECT_NO_THROW(armour::run_single(d));
}

TEST(Runner, OrderOverride) {
  const auto d = armour::parse_design(table_text());
  const auto r = armour::run_single(d, 17);
  EXPECT_EQ(r.transverse_order, 17);
  EXPECT_EQ(r.tube.mu_phi_prime, armour::mu_transverse(d.armour, 17));
}

TEST(Runner, SingleValueSweepEqualsRunSingle) {
  const auto d = armour::parse_design(table_text());
  const armour::SweepSpec spec{armour::SweepParameter::wire_count, {135.0}};
  const auto rows = armour::run_sweep(d, spec);
  ASSERT_EQ(rows.size(), 1U);
  ASSERT_TRUE(rows[0].primary.has_value());
  const auto single = armour::run_single(d);
  EXPECT_EQ(rows[0].primary->loss.delta_S, single.loss.delta_S);
  EXPECT_EQ(rows[0].primary->loss.delta_S_lambda, single.loss.delta_S_lambda);
  EXPECT_EQ(rows[0].primary->tube.mu_phi_prime, single.tube.mu_phi_prime);
}

TEST(Runner, SweepIsDeterministicAcrossThreadCounts) {
  const auto d = armour::parse_design(table_text());
  armour::SweepSpec spec;
  spec.parameter = armour::SweepParameter::wire_count;
  spec.values = armour::parse_sweep_values(spec.parameter, "25:135:5");
  std::string reference;
  for (unsigned threads : {1U, 2U, 7U, 0U}) {
    armour::SweepOptions opt;
    opt.both_truncations = true;
    opt.threads = threads;
    const auto text = armour::render_sweep(d, spec, opt, armour::run_sweep(d, spec, opt),
                                           armour::OutputFormat::csv);
    if (reference.empty()) {
      reference = text;
    } else {
      EXPECT_EQ(text, reference) << threads;
    }
  }
}

TEST(Runner, FailingRowsDoNotStopTheSweep) {
  const auto d = armour::parse_design(table_text());
  const armour::SweepSpec spec{armour::SweepParameter::wire_count, {100.0, 200.0, 120.0}};
  const auto rows = armour::run_sweep(d, spec);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_TRUE(rows[0].primary.has_value());
  EXPECT_EQ(rows[1].error_code, 2);
  EXPECT_FALSE(rows[1].error.empty());
  EXPECT_TRUE(rows[2].primary.has_value());
  EXPECT_EQ(rows[2].error_code, 0);
}

TEST(Runner, ThreadsFromEnvironment) {
  ::unsetenv("ARMOUR_LOSS_THREADS");
  EXPECT_EQ(armour::threads_from_environment(), 0U);
  ::setenv("ARMOUR_LOSS_THREADS", "3", 1);
  EXPECT_EQ(armour::threads_from_environment(), 3U);
  ::setenv("ARMOUR_LOSS_THREADS", "0", 1);
  EXPECT_THROW(armour::threads_from_environment(), armour::ValidationError);
  ::setenv("ARMOUR_LOSS_THREADS", "many", 1);
  EXPECT_THROW(armour::threads_from_environment(), armour::ValidationError);
  ::unsetenv("ARMOUR_LOSS_THREADS");
}

TEST(Report, CsvHeaderAndColumns) {
  const auto d = armour::parse_design(table_text());
  const auto text = armour::render_single(d, armour::run_single(d), armour::OutputFormat::csv);
  EXPECT_EQ(text.rfind("# ", 0), 0U);
  EXPECT_NE(text.find("armour.mu_r"), std::string::npos);
  EXPECT_NE(text.find("wire_count,d_a_over_2r"), std::string::npos);
  EXPECT_NE(text.find("loss_w_per_m"), std::string::npos);
  EXPECT_EQ(text, armour::render_single(d, armour::run_single(d), armour::OutputFormat::csv));
}

TEST(Report, JsonShape) {
  const auto d = armour::parse_design(table_text());
  const auto text = armour::render_single(d, armour::run_single(d), armour::OutputFormat::json);
  EXPECT_EQ(text.front(), '{');
  EXPECT_NE(text.find("\"loss_w_per_m\""), std::string::npos);
  EXPECT_THROW(armour::parse_output_format("xml"), armour::ValidationError);
}

TEST(Cli, EvalSucceedsAndIsByteIdentical) {
  TempDir tmp;
  const std::string cfg = kDataDir + "/curve_b_mu150.cfg";
  ASSERT_EQ(run_cli("eval " + cfg, tmp.path() / "a.csv"), 0);
  ASSERT_EQ(run_cli("eval " + cfg + " --out " + (tmp.path() / "b.csv").string()), 0);
  const auto a = read_file(tmp.path() / "a.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read_file(tmp.path() / "b.csv"));
  EXPECT_EQ(run_cli("eval " + cfg + " --emit json --transverse-order 17 --coupling printed"), 0);
}

TEST(Cli, ZeroCurrentDesignSucceeds) {
  TempDir tmp;
  const auto p = tmp.write("zero.cfg", replace_line(table_text(), "cores.current_a",
                                                     "cores.current_a = 0"));
  EXPECT_EQ(run_cli("eval " + p.string()), 0);
}

TEST(Cli, ValidationFailuresExitTwo) {
  TempDir tmp;
  const auto overlap = tmp.write(
      "overlap.cfg", replace_line(table_text(), "armour.wire_count", "armour.wire_count = 200"));
  EXPECT_EQ(run_cli("eval " + overlap.string()), 2);
  const auto badkey = tmp.write("bad.cfg", table_text() + "armour.colour = grey\n");
  EXPECT_EQ(run_cli("eval " + badkey.string()), 2);
  EXPECT_EQ(run_cli("eval /nonexistent.cfg"), 2);
  EXPECT_EQ(run_cli("eval " + kDataDir + "/curve_a_mu150.cfg --no-such-flag"), 2);
  EXPECT_EQ(run_cli("eval " + kDataDir + "/curve_a_mu150.cfg --coupling sideways"), 2);
  EXPECT_EQ(run_cli(""), 2);
}

TEST(Cli, NumericalFailureExitsThree) {
  EXPECT_EQ(run_cli("eval " + kDataDir + "/curve_a_mu150.cfg --m-max 2"), 3);
}

TEST(Cli, SweepReportsRowErrorsAndContinues) {
  TempDir tmp;
  const std::string cfg = kDataDir + "/curve_b_mu600.cfg";
  EXPECT_EQ(run_cli("sweep " + cfg + " --param N --values 25:135:10 --both-truncations",
                    tmp.path() / "ok.csv"),
            0);
  EXPECT_EQ(run_cli("sweep " + cfg + " --param N --values 100,200", tmp.path() / "bad.csv"), 2);
  const auto text = read_file(tmp.path() / "bad.csv");
  EXPECT_NE(text.find("overlap"), std::string::npos);
}

TEST(Cli, SweepOutputIndependentOfThreadCount) {
  TempDir tmp;
  const std::string args =
      "sweep " + kDataDir + "/curve_c_mu150.cfg --param mu_r --values '150,-50;600,-350;900,-100'";
  ::setenv("ARMOUR_LOSS_THREADS", "1", 1);
  ASSERT_EQ(run_cli(args, tmp.path() / "one.csv"), 0);
  ::setenv("ARMOUR_LOSS_THREADS", "3", 1);
  ASSERT_EQ(run_cli(args, tmp.path() / "three.csv"), 0);
  ::unsetenv("ARMOUR_LOSS_THREADS");
  EXPECT_EQ(read_file(tmp.path() / "one.csv"), read_file(tmp.path() / "three.csv"));
}

TEST(Cli, ValidateRunsOracleSuite) {
  TempDir tmp;
  EXPECT_EQ(run_cli("validate " + kDataDir + "/curve_b_mu600.cfg", tmp.path() / "v.txt"), 0);
  const auto text = read_file(tmp.path() / "v.txt");
  EXPECT_NE(text.find("Biot-Savart"), std::string::npos);
  EXPECT_EQ(text.find("FAIL"), std::string::npos);
}
