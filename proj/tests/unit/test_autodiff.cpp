#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "lgcn/autodiff/optim.hpp"
#include "lgcn/autodiff/parameter.hpp"
#include "lgcn/autodiff/tape.hpp"
#include "lgcn/errors.hpp"
#include "lgcn/util/rng.hpp"
#include "support.hpp"

using namespace lgcn;
using namespace lgcn::test;
using ad::Tape;
using ad::Var;

namespace {

double derivative(const std::function<Var(const Var&)>& f, double x) {
  Tape tape;
  const Var v = tape.variable(x);
  tape.backward(f(v));
  return tape.grad(v);
}

double central_difference(const std::function<Var(const Var&)>& f, double x, double h = 1e-5) {
  return (f(Var(x + h)).value - f(Var(x - h)).value) / (2.0 * h);
}

}  // namespace

TEST_CASE("primitive derivatives match central differences") {
  struct Case {
    const char* name;
    std::function<Var(const Var&)> f;
    std::vector<double> at;
  };
  const std::vector<Case> cases{
      {"add", [](const Var& x) { return x + Var(3.0) + x; }, {-1.0, 0.5}},
      {"sub", [](const Var& x) { return Var(2.0) - x * x; }, {-1.0, 0.5}},
      {"mul", [](const Var& x) { return x * x * Var(1.5); }, {-1.3, 0.7}},
      {"div", [](const Var& x) { return Var(1.0) / (x * x + Var(1.0)); }, {-1.0, 2.0}},
      {"neg", [](const Var& x) { return -x * x; }, {0.3}},
      {"exp", [](const Var& x) { return ad::exp(x); }, {-2.0, 0.0, 1.5}},
      {"log", [](const Var& x) { return ad::log(x); }, {0.2, 3.0}},
      {"sqrt", [](const Var& x) { return ad::sqrt(x); }, {0.3, 4.0}},
      {"tanh", [](const Var& x) { return ad::tanh(x); }, {-0.7, 0.0, 2.0}},
      {"cosh", [](const Var& x) { return ad::cosh(x); }, {-0.7, 1.2}},
      {"sinh", [](const Var& x) { return ad::sinh(x); }, {-0.7, 1.2}},
      {"asinh", [](const Var& x) { return ad::asinh(x); }, {-0.7, 1.2}},
      {"arcosh", [](const Var& x) { return ad::arcosh(x); }, {1.1, 3.0}},
      {"max", [](const Var& x) { return ad::max(x, Var(0.5)) * x; }, {0.2, 1.0}},
      {"relu", [](const Var& x) { return ad::relu(x) * x; }, {-0.5, 0.8}},
      {"leaky_relu", [](const Var& x) { return ad::leaky_relu(x, 0.2) * x; }, {-0.5, 0.8}},
      {"sigmoid", [](const Var& x) { return ad::sigmoid(x); }, {-3.0, 0.4}},
      {"softplus", [](const Var& x) { return ad::softplus(x); }, {-3.0, 0.4, 40.0}},
      {"abs", [](const Var& x) { return ad::abs(x); }, {-0.5, 0.5}},
      {"clamp", [](const Var& x) { return ad::clamp(x, -1.0, 1.0) * x; }, {-2.0, 0.3}},
      {"sum", [](const Var& x) { return ad::sum(std::vector<Var>{x, x * x, Var(2.0)}); }, {0.7}},
      {"dot", [](const Var& x) { return ad::dot(std::vector<Var>{x, Var(2.0)}, std::vector<Var>{x, x}); }, {0.7}},
  };
  for (const auto& c : cases) {
    for (double x : c.at) {
      INFO(c.name << " at " << x);
      CHECK(rel_err(derivative(c.f, x), central_difference(c.f, x)) <= 1e-4);
    }
  }
}

TEST_CASE("primitive derivative examples") {
  CHECK(derivative([](const Var& x) { return ad::tanh(x); }, 0.0) == 1.0);
  CHECK(derivative([](const Var& x) { return ad::arcosh(x); }, std::cosh(1.0)) ==
        doctest::Approx(oracle::kDArcoshAtCosh1).epsilon(1e-12));
  CHECK(derivative([](const Var& x) { return ad::relu(x); }, -1.0) == 0.0);
  CHECK(derivative([](const Var& x) { return ad::relu(x); }, 1.0) == 1.0);
  CHECK(derivative([](const Var& x) { return ad::relu(x); }, 0.0) == 0.0);
  CHECK(std::isfinite(derivative([](const Var& x) { return ad::arcosh(x); }, 1.0)));
  CHECK(derivative([](const Var& x) { return ad::sqrt(x); }, 0.0) == 0.0);
}

TEST_CASE("domain violations are reported when the graph is built") {
  Tape tape;
  const Var x = tape.variable(-1.0);
  CHECK_THROWS_AS(ad::log(x), ContractViolation);
  CHECK_THROWS_AS(ad::sqrt(x), ContractViolation);
  CHECK_THROWS_AS(Var(1.0) / (x + Var(1.0)), ContractViolation);
  Tape other;
  const Var y = other.variable(1.0);
  CHECK_THROWS_AS(x + y, ContractViolation);
}

TEST_CASE("backward on a sum of squares") {
  Tape tape;
  const std::vector<double> p{0.5, -1.5, 2.0};
  std::vector<Var> leaves;
  for (double v : p) leaves.push_back(tape.variable(v));
  std::vector<Var> squares;
  for (const auto& l : leaves) squares.push_back(l * l);
  const Var loss = ad::sum(squares);
  tape.backward(loss);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(tape.grad(leaves[i]) == 2.0 * p[i]);

  tape.backward(loss);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(tape.grad(leaves[i]) == 4.0 * p[i]);
  tape.zero_grad();
  CHECK(tape.grad(leaves[0]) == 0.0);

  const Var unused = tape.variable(9.0);
  tape.backward(loss);
  CHECK(tape.grad(unused) == 0.0);
}

TEST_CASE("operations on constants never touch the tape") {
  Tape tape;
  const Var x = tape.variable(2.0);
  const std::size_t before = tape.size();
  const Var c = ad::exp(Var(1.0)) * Var(3.0);
  CHECK(c.is_constant());
  CHECK(tape.size() == before);
  const Var z = x * Var(0.0);
  CHECK(z.is_constant());
  CHECK(z.value == 0.0);
}

TEST_CASE("curvature parameter") {
  CHECK(ad::CurvatureParam(-50.0).beta() > 0.0);
  CHECK(ad::CurvatureParam(-50.0).beta() >= ad::CurvatureParam::kMinBeta);
  CHECK(ad::CurvatureParam::from_beta(1.7).beta() == doctest::Approx(1.7).epsilon(1e-12));
  CHECK_THROWS_AS(ad::CurvatureParam::from_beta(1e-5), ContractViolation);
  Tape tape;
  const Var theta = tape.variable(0.3);
  const Var beta = ad::CurvatureParam::beta(theta);
  tape.backward(beta);
  CHECK(tape.grad(theta) == doctest::Approx(1.0 / (1.0 + std::exp(-0.3))).epsilon(1e-12));
}

TEST_CASE("parameter binding") {
  ad::Parameter p("w", 2, 2);
  p.values = {1.0, 2.0, 3.0, 4.0};
  Tape tape;
  const auto bound = p.bind(&tape);
  tape.backward(ad::dot(bound, bound));
  p.accumulate_grads(tape, bound);
  CHECK(p.grads == std::vector<double>{2.0, 4.0, 6.0, 8.0});
  p.zero_grad();
  CHECK(p.grads == std::vector<double>(4, 0.0));
  p.trainable = false;
  for (const auto& v : p.bind(&tape)) CHECK(v.is_constant());
}

TEST_CASE("adam step") {
  ad::AdamConfig cfg;
  cfg.lr = 0.01;
  std::vector<double> params{1.0, -2.0};
  ad::AdamState state;
  ad::adam_step(params, std::vector<double>{0.0, 0.0}, state, cfg);
  CHECK(params == std::vector<double>{1.0, -2.0});

  ad::AdamState fresh;
  std::vector<double> q{1.0, -2.0};
  const std::vector<double> grad{0.3, -4.0};
  ad::adam_step(q, grad, fresh, cfg);
  CHECK(q[0] == doctest::Approx(1.0 - cfg.lr * 0.3 / (0.3 + cfg.eps)).epsilon(1e-14));
  CHECK(q[1] == doctest::Approx(-2.0 + cfg.lr * 4.0 / (4.0 + cfg.eps)).epsilon(1e-14));

  ad::AdamState s2;
  std::vector<double> r{1.0, -2.0};
  ad::adam_step(r, grad, s2, cfg);
  CHECK(r == q);
  CHECK_THROWS_AS(ad::adam_step(r, std::vector<double>{1.0}, s2, cfg), ContractViolation);
}

TEST_CASE("dropconnect mask") {
  auto rng = derive_rng(5, Stream::kDropConnect);
  const auto ones = ad::dropconnect_mask(100, 0.0, rng);
  CHECK(ones == std::vector<double>(100, 1.0));
  const auto mask = ad::dropconnect_mask(1'000'000, 0.5, rng);
  std::size_t kept = 0, invalid = 0;
  for (double m : mask) {
    invalid += m != 0.0 && m != 2.0;
    kept += m != 0.0;
  }
  CHECK(invalid == 0);
  CHECK(std::abs(static_cast<double>(kept) / 1e6 - 0.5) <= 0.01);
  CHECK_THROWS_AS(ad::dropconnect_mask(10, 1.0, rng), ContractViolation);
  CHECK_THROWS_AS(ad::dropconnect_mask(10, -0.1, rng), ContractViolation);
}
