#include "fockq/report.hpp"

#include <json.hpp>

#include "helpers.hpp"

using namespace fockq;

namespace {

CheckOptions small_options() {
  CheckOptions opt;
  opt.seed = 3;
  opt.cutoff = 5;
  opt.trials = 1;
  return opt;
}

}  // namespace

TEST_CASE("the catalog is nonempty, sorted, and anchored") {
  const auto& reg = check_registry();
  REQUIRE(reg.size() >= 20);
  for (size_t i = 0; i + 1 < reg.size(); ++i)
    CHECK(reg[i].name < reg[i + 1].name);
  for (const auto& spec : reg) {
    CHECK(!spec.anchor.empty());
    CHECK(spec.run != nullptr);
  }
}

TEST_CASE("a named subset runs and passes") {
  std::vector<std::string> names = {"oracle_ladders", "vacuum_state",
                                    "number_parity"};
  std::vector<CheckResult> res = run_checks(names, small_options());
  REQUIRE(res.size() == 3);
  for (const auto& r : res) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
    CHECK(r.residual <= r.tolerance);
  }
  // results come back in request order, independent of scheduling
  CHECK(res[0].name == "oracle_ladders");
  CHECK(res[1].name == "vacuum_state");
  CHECK(res[2].name == "number_parity");
}

TEST_CASE("unknown names are a configuration error") {
  CHECK_ERROR_CODE(run_checks({"no_such_check"}, small_options()),
                   ErrorCode::ConfigError);
}

TEST_CASE("serialization is deterministic in the seed, not the schedule") {
  std::vector<std::string> names = {"car_fields", "ccr_fields",
                                    "field_adjoints", "kahler_polar"};
  CheckOptions opt = small_options();

  std::vector<CheckResult> r1 = run_checks(names, opt);
  std::vector<CheckResult> r2 = run_checks(names, opt);
  CheckOptions opt4 = opt;
  opt4.jobs = 4;
  std::vector<CheckResult> r4 = run_checks(names, opt4);

  std::string s1 = serialize_report(r1, opt);
  std::string s2 = serialize_report(r2, opt);
  std::string s4 = serialize_report(r4, opt4);
  CHECK(s1 == s2);
  CHECK(s1 == s4);  // timing and thread count leave no trace in the bytes

  // a different seed changes the sampled systems, hence the residuals
  CheckOptions other = opt;
  other.seed = 4;
  std::vector<CheckResult> r_other = run_checks(names, other);
  bool all_equal = true;
  for (size_t i = 0; i < r_other.size(); ++i)
    all_equal = all_equal && r_other[i].residual == r1[i].residual;
  CHECK(!all_equal);
}

TEST_CASE("the report parses as JSON with a consistent summary") {
  std::vector<std::string> names = {"functor_multiplicativity",
                                    "positivity"};
  CheckOptions opt = small_options();
  std::vector<CheckResult> res = run_checks(names, opt);
  nlohmann::json doc = nlohmann::json::parse(serialize_report(res, opt));

  CHECK(doc.at("schema").get<std::string>() == "fockq-report/1");
  CHECK(doc.at("options").at("seed").get<std::uint64_t>() == opt.seed);
  CHECK(doc.at("summary").at("total").get<int>() == 2);
  int passed = 0;
  for (const auto& c : doc.at("checks")) {
    CHECK(c.contains("name"));
    CHECK(c.contains("anchor"));
    CHECK(c.contains("residual"));
    CHECK(!c.contains("seconds"));  // timing must not enter the bytes
    if (c.at("passed").get<bool>()) ++passed;
  }
  CHECK(doc.at("summary").at("passed").get<int>() == passed);
}
