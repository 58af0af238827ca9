#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <numeric>
#include <vector>

#include "shortlab/errors.hpp"
#include "shortlab/parallel.hpp"
#include "shortlab/summation.hpp"
#include "shortlab/table.hpp"

using namespace shortlab;

TEST_CASE("compensated sum recovers what naive summation drops") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-12));

  std::vector<double> v{1e100, 1.0, -1e100};
  CHECK(compensated_sum(v) == 1.0);
}

TEST_CASE("merging partial sums equals one long sum") {
  CompensatedSum whole, a, b;
  for (int i = 1; i <= 1000; ++i) {
    const double t = 1.0 / i;
    whole.add(t);
    (i <= 400 ? a : b).add(t);
  }
  a.merge(b);
  CHECK(a.value() == whole.value());
}

TEST_CASE("parallel reductions do not depend on the thread count") {
  std::vector<double> v(200'003);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(static_cast<double>(i)) * 1e3;
  auto run = [&] {
    return deterministic_reduce(
               v.size(), 1000, CompensatedSum{},
               [&](std::size_t b, std::size_t e) {
                 CompensatedSum s;
                 for (std::size_t i = b; i < e; ++i) s.add(v[i]);
                 return s;
               },
               [](CompensatedSum a, const CompensatedSum& b) {
                 a.merge(b);
                 return a;
               })
        .value();
  };
  set_thread_limit(1);
  const double one = run();
  set_thread_limit(4);
  const double four = run();
  set_thread_limit(0);
  CHECK(one == four);
}

TEST_CASE("parallel_chunks propagates exceptions") {
  CHECK_THROWS_AS(parallel_chunks(100, 10,
                                  [](std::size_t c, std::size_t, std::size_t) {
                                    if (c == 3) throw ResourceError("boom");
                                  }),
                  ResourceError);
}

TEST_CASE("table writes CSV with a header and JSON records") {
  Table t({"name", "value", "count", "ok"});
  t.add_row({std::string("a,b"), 0.1, std::int64_t{3}, true});
  t.add_row({std::string("plain"), 1e-300, std::int64_t{-1}, false});
  const std::string csv = t.to_csv();
  CHECK(csv == "name,value,count,ok\n\"a,b\",0.1,3,true\nplain,1e-300,-1,false\n");
  const auto j = nlohmann::json::parse(t.to_json());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["name"] == "a,b");
  CHECK(j[1]["value"].get<double>() == 1e-300);
  CHECK_THROWS_AS(t.add_row({1.0}), ParameterError);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3, 7.832015, 1e22, -2.5e-310}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}
