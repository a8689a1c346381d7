#include <doctest.h>

#include "report/serialize.hpp"
#include "report/verify.hpp"
#include "runtime/error.hpp"

using namespace sw;
using namespace sw::report;

TEST_CASE("csv numbers carry 17 significant digits") {
  CHECK(number(0.1) == "0.10000000000000001");
  CHECK(number(5.0) == "5");
  CHECK(number(1.0 / 3.0) == "0.33333333333333331");
  CHECK(to_csv({"a", "b"}, {{"1", "2"}}) == "a,b\n1,2\n");
}

TEST_CASE("envelope output row") {
  const Exponent p(1.0), q(2.0);
  const Output o = envelope_output({{p, q, 4, 16, evaluate_envelope(p, q, 4, 16)}});
  CHECK(o.csv == "p,q,N,n,regime,rate_lower,rate_upper,sharp,constant_dependent\n"
                 "1,2,4,16,TheoremA.3,0.5,0.5,true,false\n");
  CHECK(o.json["rows"][0]["regime"] == "TheoremA.3");
}

TEST_CASE("kappa criterion catches a tampered formula") {
  VerifyOptions o;
  o.criteria = {3};
  CHECK(verify_primary(o).passed);
  o.kappa = [](int k, int order) { return kappa(k, order) - 1; };
  const VerifyReport r = verify_primary(o);
  REQUIRE(r.criteria.size() == 1);
  CHECK(!r.passed);
  CHECK(r.criteria[0].artifact["failures"] == 2080);
  CHECK(verdict_line(r.criteria[0]).rfind("[FAIL] 3 kappa-identity", 0) == 0);
}

TEST_CASE("criterion ids") {
  CHECK(criterion_name(1) == "norm-inequalities");
  CHECK(criterion_name(13) == "reproducibility");
  CHECK_THROWS_AS(criterion_name(0), UsageError);
  VerifyOptions o;
  o.criteria = {14};
  CHECK_THROWS_AS(verify_primary(o), UsageError);
}

TEST_CASE("reproducibility rerun of cheap criteria") {
  VerifyOptions o;
  o.criteria = {2, 3, 6, 11, 13};
  const VerifyReport r = verify_primary(o);
  CHECK(r.passed);
  CHECK(r.criteria.back().id == 13);
  CHECK(r.criteria.back().artifact["differing"].empty());
  CHECK(verdict_json(r)["criteria"].size() == 5);
}
