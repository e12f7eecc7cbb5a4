#include <gtest/gtest.h>

#include <sstream>

#include "ecg/io.hpp"
#include "support.hpp"

namespace ecg {
namespace {

TEST(Json, NonFiniteEncoding) {
  EXPECT_EQ(io::encode_real(INFINITY), "inf");
  EXPECT_EQ(io::encode_real(-INFINITY), "-inf");
  EXPECT_EQ(io::decode_real(io::Json("-inf"), "x"), -INFINITY);
  EXPECT_THROW(io::decode_real(io::Json("many"), "x"), Error);
}

TEST(Json, SolutionRoundTripIsBitExact) {
  testing::Draws d(5);
  for (int i = 0; i < 200; ++i) {
    const auto p = i % 3 == 0 ? make_gcg(d.uniform(0.01, 1), 1.0 - d.uniform(0, 0.99)) : d.ecg_params();
    const auto sol = solve(p, d.state(), d.state());
    const auto text = io::to_json(sol).dump();
    const auto back = io::solution_from_json(io::Json::parse(text));
    EXPECT_EQ(back, sol);
    EXPECT_EQ(io::to_json(back).dump(), text);
  }
  for (const auto& [l, r] : {std::pair{State{1, -1}, State{1, 1}}, {State{1, 1}, State{2, -1}}, {State{1, 0}, State{2, 0}}}) {
    const auto sol = solve_transport(l, r);
    EXPECT_EQ(io::solution_from_json(io::Json::parse(io::to_json(sol).dump())), sol);
  }
}

TEST(Json, SweepRoundTrip) {
  const auto rep = run_to_gcg_sweep({1, 1}, {1, -1}, Schedule::a_vanishes_decades(3, 6, 0.01, 2, 1));
  EXPECT_EQ(io::sweep_from_json(io::Json::parse(io::to_json(rep).dump())), rep);
}

TEST(Json, ClassificationRoundTrip) {
  const auto c = io::classify(make_gcg(0.01, 0.5), {1, 1}, {1, -1});
  EXPECT_EQ(c.region, "V");
  EXPECT_EQ(io::classification_from_json(io::Json::parse(io::to_json(c).dump())), c);
}

TEST(Problem, ParsesBlocksAndDefaults) {
  const auto pr = io::parse_problem(R"({"model": {"tag": "gcg", "B": 0.5, "alpha": 0.5},
      "left": {"rho": 1, "u": 0}, "right": {"rho": 2, "u": 0},
      "grid": {"cells": 64, "scheme": "local_lax_friedrichs"}})");
  EXPECT_EQ(pr.model, make_gcg(0.5, 0.5));
  EXPECT_EQ(pr.grid->cells, 64);
  EXPECT_EQ(pr.grid->scheme, Scheme::LocalLaxFriedrichs);
  EXPECT_EQ(pr.grid->t_end, GridConfig{}.t_end);
}

TEST(Problem, Rejections) {
  auto bad = [](const char* text) {
    try {
      io::parse_problem(text);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::Input || e.kind() == ErrorKind::InvalidParams;
    }
    return false;
  };
  EXPECT_TRUE(bad("{"));
  EXPECT_TRUE(bad(R"({"left": {"rho": 1, "u": 0}})"));
  EXPECT_TRUE(bad(R"({"model": {"tag": "ecg", "A": 1, "B": 1, "n": 2}})"));
  EXPECT_TRUE(bad(R"({"model": {"tag": "transport", "gamma": 1}})"));
  EXPECT_TRUE(bad(R"({"model": {"tag": "transport"}, "left": {"rho": 1, "u": 0, "p": 2}})"));
  EXPECT_TRUE(bad(R"({"model": {"tag": "transport"}, "grid": {"cells": 10.5}})"));
  EXPECT_TRUE(bad(R"({"model": {"tag": "transport"}, "schedule": {"mode": "x", "steps": 3}})"));
}

TEST(Problem, ScheduleBlocks) {
  const auto m = make_ecg(0.1, 0.3, 2, 0.5);
  const auto s = io::make_schedule(io::Json::parse(R"({"mode": "a_vanishes", "decades": [2, 4]})"), m);
  ASSERT_EQ(s.points.size(), 3u);
  EXPECT_EQ(s.points[0].B, 0.3);
  const auto t = io::make_schedule(io::Json::parse(R"({"mode": "both_vanish", "points": [{"A": 0.1, "B": 0.2}]})"), m);
  EXPECT_EQ(t.points.size(), 1u);
  EXPECT_THROW(io::make_schedule(io::Json::parse(R"({"mode": "both_vanish"})"), m), Error);
}

TEST(Csv, SeventeenDigitsAndLf) {
  std::ostringstream os;
  io::write_csv_row(os, {0.1, 1.0 / 3.0, -INFINITY});
  EXPECT_EQ(os.str(), "0.10000000000000001,0.33333333333333331,-inf\n");
}

}  // namespace
}  // namespace ecg
