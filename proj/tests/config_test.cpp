#include "abring/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "abring/error.hpp"

namespace abring {
namespace {

std::string message_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected an abring::Error";
  return {};
}

std::filesystem::path scratch_file(const std::string& name, const std::string& contents) {
  const auto dir = std::filesystem::temp_directory_path() / "abring_config_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << contents;
  return path;
}

TEST(Presets, Fig1) {
  const SweepConfig c = preset_config("fig1");
  EXPECT_EQ(c.regime, Regime::Relativistic);
  EXPECT_EQ(c.flux_ratios, (std::vector<double>{50, 100, 150, 200}));
  EXPECT_GT(c.tau_min, 0.0);
  EXPECT_EQ(c.tau_max, 20.0);
  EXPECT_EQ(c.method, PartitionMethod::HighTClosed);
}

TEST(Presets, Fig2) {
  const SweepConfig c = preset_config("fig2");
  EXPECT_EQ(c.regime, Regime::NonRelativistic);
  EXPECT_EQ(c.tau_max, 10000.0);
  EXPECT_EQ(c.method, PartitionMethod::GeometricClosed);
}

TEST(Presets, UnknownNameListsChoices) {
  const auto msg = message_of([] { preset_config("fig3"); });
  EXPECT_NE(msg.find("fig1, fig2"), std::string::npos);
}

TEST(KeyValueText, ParsesCommentsAndWhitespace) {
  const auto kv = parse_key_values(
      "# comment\n"
      "  regime = nonrelativistic  # trailing\n"
      "\n"
      "flux_ratio=50, 75\r\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"regime", "nonrelativistic"}));
  EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"flux_ratio", "50, 75"}));
}

TEST(KeyValueText, ErrorsCarryLineContext) {
  EXPECT_NE(message_of([] { parse_key_values("regime = relativistic\nbogus = 1\n", "run.cfg"); })
                .find("run.cfg:2:"),
            std::string::npos);
  const auto msg = message_of([] { parse_key_values("just text", "run.cfg"); });
  EXPECT_NE(msg.find("run.cfg:1:"), std::string::npos);
  EXPECT_NE(msg.find("key = value"), std::string::npos);
  EXPECT_NE(message_of([] { parse_key_values("colour = red"); }).find("accepted: preset"),
            std::string::npos);
}

TEST(ApplyKeyValue, EveryKey) {
  SweepConfig c = preset_config("fig1");
  apply_key_value(c, "regime", "nonrelativistic");
  apply_key_value(c, "flux_ratio", "60,70");
  apply_key_value(c, "mass", "2.5");
  apply_key_value(c, "radius", "0.5");
  apply_key_value(c, "n_fermions", "12");
  apply_key_value(c, "tau_min", "1");
  apply_key_value(c, "tau_max", "9");
  apply_key_value(c, "tau_steps", "17");
  apply_key_value(c, "grid", "log");
  apply_key_value(c, "method", "direct");
  apply_key_value(c, "fidelity", "paper");
  apply_key_value(c, "em_order", "1");
  apply_key_value(c, "spectrum", "full");
  apply_key_value(c, "tail_tolerance", "1e-10");
  apply_key_value(c, "max_terms", "5000");
  apply_key_value(c, "out", "x.csv");
  EXPECT_EQ(c.regime, Regime::NonRelativistic);
  EXPECT_EQ(c.flux_ratios, (std::vector<double>{60, 70}));
  EXPECT_EQ(c.ring.mass, 2.5);
  EXPECT_EQ(c.ring.radius, 0.5);
  EXPECT_EQ(c.ring.particle_count, 12);
  EXPECT_EQ(c.tau_min, 1.0);
  EXPECT_EQ(c.tau_max, 9.0);
  EXPECT_EQ(c.tau_steps, 17);
  EXPECT_EQ(c.grid_scale, GridScale::Log);
  EXPECT_EQ(c.method, PartitionMethod::DirectSum);
  EXPECT_EQ(c.fidelity, Fidelity::PaperLiteral);
  EXPECT_EQ(c.em_order, 1);
  EXPECT_EQ(c.spectrum, SpectrumModel::Full);
  EXPECT_EQ(c.tail_tolerance, 1e-10);
  EXPECT_EQ(c.max_terms, 5000);
  EXPECT_EQ(c.output_path, "x.csv");
  EXPECT_NO_THROW(c.validate());
}

TEST(ApplyKeyValue, BadValuesNameKeyAndChoices) {
  SweepConfig c;
  EXPECT_NE(message_of([&] { apply_key_value(c, "mass", "heavy"); }).find("mass"),
            std::string::npos);
  EXPECT_NE(message_of([&] { apply_key_value(c, "tau_steps", "2.5"); }).find("integer"),
            std::string::npos);
  EXPECT_NE(message_of([&] { apply_key_value(c, "grid", "cubic"); }).find("linear, log"),
            std::string::npos);
  EXPECT_NE(message_of([&] { apply_key_value(c, "method", "simpson"); }).find("geometric"),
            std::string::npos);
  EXPECT_NE(message_of([&] { apply_key_value(c, "em_order", "4"); }).find("0, 1, 2"),
            std::string::npos);
  EXPECT_NE(message_of([&] { apply_key_value(c, "flux_ratio", "50,,60"); }).find("flux_ratio"),
            std::string::npos);
}

TEST(ResolveConfig, LayersPresetFileThenCommandLine) {
  const KeyValues file = {{"preset", "fig2"}, {"tau_steps", "10"}, {"mass", "3"}};
  const KeyValues cli = {{"tau_steps", "20"}};
  const SweepConfig c = resolve_config(file, cli);
  EXPECT_EQ(c.regime, Regime::NonRelativistic);
  EXPECT_EQ(c.tau_steps, 20);
  EXPECT_EQ(c.ring.mass, 3.0);
}

TEST(ResolveConfig, CommandLinePresetWins) {
  const SweepConfig c = resolve_config({{"preset", "fig2"}}, {{"preset", "fig1"}});
  EXPECT_EQ(c.regime, Regime::Relativistic);
}

TEST(ResolveConfig, ValidatesTheResult) {
  const auto msg = message_of([] { resolve_config({}, {{"tau_min", "0"}}); });
  EXPECT_NE(msg.find("tau_min"), std::string::npos);
}

TEST(ParseConfig, ReadsFiles) {
  const auto path = scratch_file("run.cfg", "preset = fig2\nflux_ratio = 80\n");
  const SweepConfig c = parse_config({{"tau_steps", "3"}}, path);
  EXPECT_EQ(c.flux_ratios, (std::vector<double>{80}));
  EXPECT_EQ(c.tau_steps, 3);
  try {
    parse_config({}, std::filesystem::path("/nonexistent/run.cfg"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(FormatConfig, RoundTrips) {
  SweepConfig c = preset_config("fig2");
  c.flux_ratios = {50.5, 0.1 + 0.2};
  c.tail_tolerance = 3e-13;
  c.output_path = "out.csv";
  const std::string text = format_config(c);
  const SweepConfig back = resolve_config(parse_key_values(text), {});
  EXPECT_EQ(format_config(back), text);
  EXPECT_EQ(back.flux_ratios, c.flux_ratios);
}

TEST(ConfigKeys, AllKeysAreFormatted) {
  const std::string text = format_config(preset_config("fig1"));
  for (std::string_view key : config_keys()) {
    if (key == "preset") continue;
    EXPECT_NE(text.find(std::string(key) + " ="), std::string::npos) << key;
  }
}

}  // namespace
}  // namespace abring
