#include <limits>
#include <sstream>

#include "selberg/io.hpp"
#include "test_util.hpp"

using namespace selberg;

namespace {
void check_same(const CoeffTable& a, const CoeffTable& b) {
  CHECK(a.family == b.family);
  CHECK(a.degree == b.degree);
  CHECK(a.prime_limit == b.prime_limit);
  CHECK(a.series_order == b.series_order);
  CHECK(a.tail_bound == b.tail_bound);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].k == b.entries[i].k);
    CHECK(a.entries[i].l == b.entries[i].l);
    CHECK(a.entries[i].n == b.entries[i].n);
    CHECK(a.entries[i].value == b.entries[i].value);
    CHECK(a.entries[i].imag == b.entries[i].imag);
    CHECK(a.entries[i].bound == b.entries[i].bound);
  }
}
}  // namespace

TEST_CASE("coefficient tables round trip bit for bit") {
  const auto bp = b_prime_table(6, 1e-12);
  for (const auto& t : {bp, b_tilde_table(bp), d_table(bp), b_table(4, 8)}) {
    std::stringstream ss;
    write_table(t, ss);
    check_same(t, read_table(ss));
  }
}

TEST_CASE("params survive the round trip") {
  CoeffTable t = d_table(0);
  t.params = ExpansionParams::make(0.3, 1e5, 0);
  const auto back = coeff_table_from_json(to_json(t));
  REQUIRE(back.params.has_value());
  CHECK(back.params->psi == t.params->psi);
  CHECK(back.params->sigma_T == t.params->sigma_T);
}

TEST_CASE("malformed tables") {
  std::stringstream junk("not json");
  CHECK_FAILS_WITH(read_table(junk), ErrorKind::domain);
  CHECK_FAILS_WITH(coeff_table_from_json(nlohmann::json::object()), ErrorKind::domain);
  auto j = to_json(d_table(0));
  j["family"] = "q";
  CHECK_FAILS_WITH(coeff_table_from_json(j), ErrorKind::domain);
}

TEST_CASE("rectangle text") {
  const auto r = parse_rectangle("-1,inf,-inf,0.5");
  CHECK(r.a == -1);
  CHECK(r.b == std::numeric_limits<double>::infinity());
  CHECK(r.c == -std::numeric_limits<double>::infinity());
  CHECK(r.d == 0.5);
  const auto j = to_json(r);
  CHECK(j.dump() == R"([-1.0,"inf","-inf",0.5])");
  CHECK_FAILS_WITH(parse_rectangle("1,2,3"), ErrorKind::domain);
  CHECK_FAILS_WITH(parse_rectangle("1,x,3,4"), ErrorKind::domain);
  CHECK_FAILS_WITH(parse_rectangle("2,1,0,1"), ErrorKind::order);
}
