#include <gtest/gtest.h>

#include "limop/report.hpp"

using namespace limop;

TEST(Report, FormatDouble) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-2.0), "-2");
  EXPECT_EQ(format_double(std::nan("")), "\"nan\"");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "\"inf\"");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "\"-inf\"");
}

TEST(Report, DumpRoundTrips) {
  Json j{{"b", 1}, {"a", Json::array({0.1, 2.5, -1.0})}, {"nested", Json{{"x", "s"}, {"y", Json::array()}}}};
  const auto text = dump_deterministic(j);
  const auto back = Json::parse(text);
  EXPECT_EQ(back["a"][0].get<double>(), 0.1);
  EXPECT_EQ(back["nested"]["x"], "s");
  // insertion order is kept
  EXPECT_LT(text.find("\"b\""), text.find("\"a\""));
  EXPECT_NE(text.find("[0.10000000000000001, 2.5, -1]"), std::string::npos);
}

TEST(Report, NonFiniteBecomesString) {
  Json j{{"v", std::numeric_limits<double>::infinity()}};
  const auto back = Json::parse(dump_deterministic(j));
  EXPECT_EQ(back["v"], "inf");
}

TEST(Report, DeterministicAcrossRuns) {
  const auto a = dump_deterministic(to_json(bbf_equivalence_suite({8})));
  const auto b = dump_deterministic(to_json(bbf_equivalence_suite({8})));
  EXPECT_EQ(a, b);
}

TEST(Report, EnvelopeKeys) {
  const auto e = envelope("limited", Json::object(), 7, 16, to_json(pgnf_scale_window(2)), Json::object(), Json{{"k", 1}});
  std::vector<std::string> keys;
  for (auto it = e.begin(); it != e.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"version", "command", "config", "seed", "N", "scale_window", "tolerances",
                                            "result"}));
  EXPECT_EQ(e["version"], kVersion);
}

TEST(Report, DiffReportFields) {
  const auto r = classify_point(supnorm_fn(), TruncatedVector({1.0, 0.5}, SpaceTag::c0()),
                                TruncatedVector({1.0, 0.0}, SpaceTag::l1_dual()));
  const auto j = to_json(r);
  EXPECT_EQ(j["classification"], "frechet");
  EXPECT_EQ(j["gateaux_table"].size(), 4u);
  EXPECT_EQ(j["frechet_table"].size(), r.frechet_table.size());
}

TEST(Report, CsvHeaders) {
  const auto lim = limited_operator_test(LinearOp::identity(4), {jn_basis_sequence(4)}, 4);
  const auto csv = csv_of(lim);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "spec,n,sup_value");
  EXPECT_NE(csv.find("basis,3,1\n"), std::string::npos);
  const auto exp = csv_of(bbf_equivalence_suite({6}));
  EXPECT_EQ(exp.substr(0, exp.find('\n')), "leg,N,status,metric,value");
  const auto diff = csv_of(classify_point(supnorm_fn(), TruncatedVector({1.0, 0.5}, SpaceTag::c0()),
                                          TruncatedVector({1.0, 0.0}, SpaceTag::l1_dual())));
  EXPECT_EQ(diff.substr(0, diff.find('\n')), "table,row,t,quotient");
}
