#include <doctest.h>

#include <string>

#include "fracdiff/config.hpp"
#include "fracdiff/errors.hpp"

using namespace fracdiff;

namespace {

std::string minimal() {
  return "gamma=0.9\nnx=20\nny=20\nsteps=100\nstrategy=full\n";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal config fills the defaults") {
  const SimConfig cfg = parse_config(minimal());
  CHECK(cfg.gamma == 0.9);
  CHECK(cfg.alpha == 1.0);
  CHECK(cfg.beta == 0.0);
  CHECK(cfg.dt == 1.0);
  CHECK(cfg.dx == 1.0);
  CHECK(cfg.nx == 20);
  CHECK(cfg.ny == 20);
  CHECK(cfg.steps == 100);
  CHECK(cfg.snapshot_every == 0);
  CHECK(cfg.strategy == MemoryStrategy{Full{}});
  CHECK(cfg.init.empty());
  CHECK(cfg.out_dir == "out");
}

TEST_CASE("comments and blank lines are ignored") {
  const SimConfig cfg =
      parse_config("# a comment\n\n  gamma = 0.9 \nnx=20\nny=20\nsteps=10\nstrategy=full\n");
  CHECK(cfg.gamma == 0.9);
}

TEST_CASE("gamma outside (0, 2] names the key") {
  const std::string text = "gamma=2.5\nnx=20\nny=20\nsteps=100\nstrategy=full\n";
  CHECK_THROWS_WITH_AS(parse_config(text),
                       doctest::Contains("gamma"), ValidationError);
}

TEST_CASE("strategy-specific keys are required exactly when selected") {
  CHECK_THROWS_WITH_AS(
      parse_config("gamma=0.9\nnx=20\nny=20\nsteps=100\nstrategy=short\n"),
      doctest::Contains("L"), ValidationError);
  CHECK_THROWS_WITH_AS(
      parse_config(minimal() + "L=50\n"), doctest::Contains("L"), ValidationError);
  CHECK_NOTHROW(
      parse_config("gamma=0.9\nnx=20\nny=20\nsteps=100\nstrategy=short\nL=50\n"));
  CHECK_THROWS_AS(
      parse_config("gamma=0.9\nnx=20\nny=20\nsteps=100\nstrategy=adaptive\na=1\n"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_config("gamma=0.9\nnx=20\nny=20\nsteps=100\nstrategy=nosuch\n"),
      ValidationError);
}

TEST_CASE("unknown, duplicate, and malformed keys are rejected with location") {
  CHECK_THROWS_WITH_AS(parse_config(minimal() + "bogus=1\n"),
                       doctest::Contains("bogus"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(minimal() + "gamma=0.5\n"),
                       doctest::Contains("duplicate"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config("gamma=zero\nnx=20\nny=20\nsteps=1\nstrategy=full\n"),
                       doctest::Contains("gamma"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_config(minimal() + "no equals sign\n"),
                       doctest::Contains("key=value"), ValidationError);
}

TEST_CASE("init triples parse and are bounds-checked") {
  const SimConfig cfg =
      parse_config(minimal() + "init=10,10,10.0;11,10,0.05\n");
  REQUIRE(cfg.init.size() == 2);
  CHECK(cfg.init[0] == PointSource{10, 10, 10.0});
  CHECK(cfg.init[1] == PointSource{11, 10, 0.05});

  CHECK_THROWS_AS(parse_config(minimal() + "init=0,10,1.0\n"), ValidationError);
  CHECK_THROWS_AS(parse_config(minimal() + "init=10,10\n"), ValidationError);
}

TEST_CASE("round-trip through serialize_config") {
  std::vector<std::string> texts = {
      minimal() + "init=10,10,10.0;5,7,0.125\nsnapshot_every=25\nout_dir=results\n",
      "gamma=0.75\nnx=40\nny=1\nsteps=64\nstrategy=short\nL=12.5\ndt=0.5\ndx=2\n",
      "gamma=1.1\nnx=20\nny=20\nsteps=50\nstrategy=adaptive\na=4\n",
      "gamma=0.9\nnx=20\nny=20\nsteps=50\nstrategy=powerlaw\neta=3\n",
      "gamma=0.9\nnx=20\nny=20\nsteps=50\nstrategy=smart\nthreshold=0.0001\n",
  };
  for (const auto& text : texts) {
    const SimConfig cfg = parse_config(text);
    const SimConfig again = parse_config(serialize_config(cfg));
    CHECK(again == cfg);
  }
}

TEST_CASE("strategy parameter domains are enforced at parse time") {
  CHECK_THROWS_AS(
      parse_config("gamma=0.9\nnx=20\nny=20\nsteps=10\nstrategy=short\nL=0.5\n"),
      ValidationError);  // L/dt < 1
  CHECK_THROWS_AS(
      parse_config("gamma=0.9\nnx=20\nny=20\nsteps=10\nstrategy=powerlaw\neta=0\n"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_config("gamma=0.9\nnx=20\nny=20\nsteps=10\nstrategy=smart\nthreshold=0\n"),
      ValidationError);
}

}  // TEST_SUITE
