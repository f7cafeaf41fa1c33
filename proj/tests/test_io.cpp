#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tailcond/csv.hpp"
#include "tailcond/error.hpp"
#include "tailcond/serialization.hpp"

using namespace tailcond;

TEST_CASE("number formatting round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, 0.99999999999999989}) {
    const auto text = format_double(v);
    CHECK(std::stod(text) == v);
    CHECK(text.find(',') == std::string::npos);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("sample csv") {
  const auto m = CopulaModel::archimedean(Generator::clayton(2.0), 3);
  const auto s = sample_archimedean(m, 50, 1);
  std::stringstream out;
  write_sample_csv(out, s);
  const auto table = read_csv(out);
  CHECK(table.header == std::vector<std::string>{"u1", "u2", "u3"});
  CHECK(table.rows() == 50);
  CHECK(table.data == s.data);
}

TEST_CASE("maxima csv carries its norming") {
  const auto m = CopulaModel::archimedean(Generator::gumbel(3.0), 3);
  const auto nc = norming_constants(m, 0.99, 2, 1000);
  MaximaSample s(2, conditional_norming(nc));
  s.append(std::vector<double>{1.25, 2.5});
  s.append(std::vector<double>{3.0, 0.125});
  std::stringstream out;
  write_maxima_csv(out, s);
  const std::string text = out.str();
  CHECK(text.rfind("# norming=conditional", 0) == 0);
  CHECK(text.find("c=" + format_double(nc.c)) != std::string::npos);
  CHECK(text.find("n=1000") != std::string::npos);
  const auto back = read_maxima_csv(out);
  CHECK(back.data() == s.data());
  CHECK(back.norming().kind == NormingKind::Conditional);
  CHECK(back.norming().c == nc.c);
  CHECK(back.norming().a == nc.a_n);
  CHECK(back.norming().block == 1000);

  MaximaSample u(3, unconditional_norming(20000, MaximaScale::Literal));
  u.append(std::vector<double>{-1.0, -2.0, -0.5});
  std::stringstream out2;
  write_maxima_csv(out2, u);
  const auto back2 = read_maxima_csv(out2);
  CHECK(back2.norming().kind == NormingKind::Unconditional);
  CHECK(back2.norming().scale == MaximaScale::Literal);
  CHECK(back2.norming().block == 20000);
}

TEST_CASE("malformed csv") {
  std::stringstream bad("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(bad), DimensionError);
  std::stringstream word("a\nxyz\n");
  CHECK_THROWS_AS(read_csv(word), InvalidParameter);
  std::stringstream empty("# only metadata\n");
  CHECK_THROWS_AS(read_csv(empty), InvalidParameter);
}

TEST_CASE("pickands and probe csv") {
  const auto grid = SimplexGrid::regular(2, 0.5);
  std::stringstream out;
  write_pickands_csv(out, grid, std::vector<double>{1.0, 0.75, 1.0});
  CHECK(out.str() == "t1,t2,A\n0,1,1\n0.5,0.5,0.75\n1,0,1\n");
  CHECK_THROWS_AS(write_pickands_csv(out, grid, std::vector<double>{1.0}), DimensionError);

  std::stringstream probe;
  const std::vector<ProbeRow> rows{{1000.0, 1.5, 2.0, 0.25, false}};
  write_probe_csv(probe, rows);
  CHECK(probe.str() == "n,value,target,rel_error,clamped\n1000,1.5,2,0.25,0\n");
}

TEST_CASE("model json round trip") {
  const CopulaModel model(Generator::gumbel(2.0).power(1.5), DNorm::logistic(3.0, 3), {0.6, 0.7, 0.8});
  const auto doc = to_json(model);
  CHECK(doc["generator"]["family"] == "gumbel");
  CHECK(doc["generator"]["theta"] == 2.0);
  CHECK(doc["dnorm"]["kind"] == "logistic");
  CHECK(doc["dnorm"]["q"] == 3.0);
  CHECK(doc["dnorm"]["d"] == 3);
  CHECK(doc["dim"] == 3);
  const auto back = model_from_json(json::parse(doc.dump()));
  CHECK(back.generator() == model.generator());
  CHECK(back.dnorm() == model.dnorm());
  CHECK(back.lower_valid() == model.lower_valid());

  const auto sup = to_json(DNorm::sup(4));
  CHECK_FALSE(sup.contains("q"));
  CHECK(dnorm_from_json(sup) == DNorm::sup(4));
  CHECK_THROWS_AS(generator_from_json(json{{"family", "gumbel"}}), InvalidParameter);
  CHECK_THROWS_AS(generator_from_json(json{{"family", "gumbel"}, {"theta", "three"}}), InvalidParameter);
}

TEST_CASE("experiment config json") {
  ExperimentConfig c = ExperimentConfig::desk();
  c.theta = 4.0;
  c.conditioned = 0;
  c.critical = CriticalSource::monte_carlo(500, 77);
  c.slice_mode = SliceMode::Scan;
  const auto doc = to_json(c);
  CHECK(doc["j"] == 1);
  const auto back = config_from_json(doc);
  CHECK(back.theta == 4.0);
  CHECK(back.conditioned_index() == 0);
  CHECK(back.critical.kind == CriticalSourceKind::MonteCarlo);
  CHECK(back.critical.reps == 500);
  CHECK(back.critical.seed == 77);
  CHECK(back.slice_mode == SliceMode::Scan);
  CHECK(to_json(back) == doc);

  const auto partial = config_from_json(json{{"d", 4}, {"M", 10}}, ExperimentConfig::desk());
  CHECK(partial.dim == 4);
  CHECK(partial.runs == 10);
  CHECK(partial.sample_size == 20000);
  CHECK_THROWS_AS(config_from_json(json{{"dimension", 4}}), InvalidParameter);
  CHECK_THROWS_AS(config_from_json(json{{"j", 0}}), InvalidParameter);
}

TEST_CASE("test result json") {
  TailTestResult r;
  r.statistic = 3.5;
  r.critical_value = 1.3;
  r.reject = true;
  r.dim = 3;
  r.sample_size = 100;
  r.source = CriticalSource::builtin();
  const auto doc = to_json(r);
  CHECK(doc["reject"] == true);
  CHECK(doc["critical_source"]["kind"] == "builtin");
  CHECK(doc["dim"] == 3);
}
