#include <doctest.h>

#include <sstream>

#include <goldmitch/cyclesim.hpp>
#include <goldmitch/goldschmidt.hpp>
#include <goldmitch/harness.hpp>

using namespace goldmitch;

namespace {

const DividerConfig kCfg;

int census(const CycleTrace& t, int bit) {
  int n = 0;
  for (const CycleRecord& r : t.records) n += r.en.test(bit) ? 1 : 0;
  return n;
}

}  // namespace

TEST_SUITE("cyclesim") {

TEST_CASE("state names and enables") {
  CHECK(to_string(FsmState{FsmPhase::idle, 0}) == "IDLE");
  CHECK(to_string(FsmState{FsmPhase::sign, 0}) == "SIGN");
  CHECK(to_string(FsmState{FsmPhase::coeff, 1}) == "COEFF1");
  CHECK(to_string(FsmState{FsmPhase::mult, 3}) == "MULT3");
  CHECK(to_string(FsmState{FsmPhase::out, 0}) == "OUT");

  CHECK(enable_of(FsmState{FsmPhase::idle, 0}).bits == 0u);
  CHECK(enable_of(FsmState{FsmPhase::sign, 0}).bits == 1u);
  CHECK(enable_of(FsmState{FsmPhase::coeff, 2}).bits == 2u);
  CHECK(enable_of(FsmState{FsmPhase::mult, 2}).bits == 4u);
  CHECK(enable_of(FsmState{FsmPhase::out, 0}).bits == 8u);

  CHECK(EnableBits{0u}.to_binary() == "0000");
  CHECK(EnableBits{1u}.to_binary() == "0001");
  CHECK(EnableBits{2u}.to_binary() == "0010");
  CHECK(EnableBits{4u}.to_binary() == "0100");
  CHECK(EnableBits{8u}.to_binary() == "1000");
}

TEST_CASE("controller transitions") {
  const FsmState idle{FsmPhase::idle, 0};
  CHECK(fsm_step(idle, 0, kCfg).state == idle);
  CHECK(fsm_step(idle, 0, kCfg).en.bits == 0u);
  CHECK(fsm_step(idle, 1, kCfg).state == FsmState{FsmPhase::sign, 0});
  CHECK(fsm_step(idle, 1, kCfg).en.bits == 1u);

  CHECK(fsm_step(FsmState{FsmPhase::sign, 0}, 0, kCfg).state == FsmState{FsmPhase::coeff, 1});
  CHECK(fsm_step(FsmState{FsmPhase::coeff, 2}, 0, kCfg).state == FsmState{FsmPhase::mult, 2});
  CHECK(fsm_step(FsmState{FsmPhase::mult, 2}, 0, kCfg).state == FsmState{FsmPhase::coeff, 3});
  CHECK(fsm_step(FsmState{FsmPhase::mult, 4}, 0, kCfg).state == FsmState{FsmPhase::out, 0});
  CHECK(fsm_step(FsmState{FsmPhase::out, 0}, 0, kCfg).state == idle);

  // a start pulse preempts any state
  CHECK(fsm_step(FsmState{FsmPhase::mult, 2}, 1, kCfg).state == FsmState{FsmPhase::sign, 0});
  CHECK(fsm_step(FsmState{FsmPhase::out, 0}, 1, kCfg).state == FsmState{FsmPhase::sign, 0});

  DividerConfig one = kCfg;
  one.iterations = 1;
  CHECK(fsm_step(FsmState{FsmPhase::mult, 1}, 0, one).state == FsmState{FsmPhase::out, 0});
}

TEST_CASE("input change detector") {
  RegisterFile regs = RegisterFile::initial(kCfg);
  const SignedInput a(BigInt(53), 32), b(BigInt(11), 32);

  TriggerResult t1 = trigger_step(a, b, regs);
  CHECK(t1.start == 1);
  CHECK(t1.regs.dividend_1 == 53);
  CHECK(t1.regs.divisor_1 == 11);

  TriggerResult t2 = trigger_step(a, b, t1.regs);
  CHECK(t2.start == 0);

  // two's-complement bits feed the comparison
  TriggerResult t3 = trigger_step(SignedInput(BigInt(-53), 32), b, t2.regs);
  CHECK(t3.start == 1);
  CHECK(t3.regs.dividend_1 == (BigUint(1) << 32) - 53);

  TriggerResult t4 = trigger_step(a, SignedInput(BigInt(12), 32), t2.regs);
  CHECK(t4.start == 1);
}

TEST_CASE("register latching rules") {
  const RegisterFile regs = RegisterFile::initial(kCfg);

  CHECK(register_step(EnableBits{0u}, DatapathSignals{}, regs) == regs);

  DatapathSignals s0;
  s0.dividend_fix = encode(Rational(53, 16), kCfg.dividend_format());
  s0.divisor_fix = encode(Rational(11, 16), kCfg.divisor_format());
  s0.sign = 1;
  const RegisterFile after0 = register_step(EnableBits{1u}, s0, regs);
  CHECK(after0.dividend_fix == *s0.dividend_fix);
  CHECK(after0.divisor_fix == *s0.divisor_fix);
  CHECK(after0.dividend_in == *s0.dividend_fix);   // iteration 1 reads these
  CHECK(after0.divisor_in == *s0.divisor_fix);
  CHECK(after0.sign == 1);
  CHECK(after0.dividend_out == regs.dividend_out);  // untouched
  CHECK(after0.coeff == regs.coeff);

  DatapathSignals s1;
  s1.coeff = encode(Rational(21, 16), kCfg.divisor_format());
  const RegisterFile after1 = register_step(EnableBits{2u}, s1, after0);
  CHECK(after1.coeff == *s1.coeff);
  CHECK(after1.dividend_in == after0.dividend_in);

  DatapathSignals s2;
  s2.dividend_prod = encode(Rational(9, 2), kCfg.dividend_format());
  s2.divisor_prod = encode(Rational(7, 8), kCfg.divisor_format());
  const RegisterFile after2 = register_step(EnableBits{4u}, s2, after1);
  CHECK(after2.dividend_out == *s2.dividend_prod);
  CHECK(after2.divisor_out == *s2.divisor_prod);
  // products also feed the next iteration's inputs
  CHECK(after2.dividend_in == *s2.dividend_prod);
  CHECK(after2.divisor_in == *s2.divisor_prod);
  CHECK(after2.dividend_fix == after1.dividend_fix);
}

TEST_CASE("reference trace") {
  const CycleResult res =
      run_cycles(SignedInput(BigInt(53), 32), SignedInput(BigInt(11), 32), kCfg);
  REQUIRE(res.trace.records.size() == 11);

  const char* expected_states[] = {"IDLE",   "SIGN",  "COEFF1", "MULT1", "COEFF2", "MULT2",
                                   "COEFF3", "MULT3", "COEFF4", "MULT4", "OUT"};
  for (std::size_t i = 0; i < 11; ++i) {
    const CycleRecord& r = res.trace.records[i];
    CHECK(r.cycle == static_cast<long>(i));
    CHECK(to_string(r.state) == expected_states[i]);
    CHECK(r.start == (i == 0 ? 1 : 0));
  }
  CHECK(census(res.trace, 0) == 1);
  CHECK(census(res.trace, 1) == 4);
  CHECK(census(res.trace, 2) == 4);
  CHECK(census(res.trace, 3) == 1);

  CHECK(res.quotient ==
        divide(SignedInput(BigInt(53), 32), SignedInput(BigInt(11), 32), kCfg));

  std::ostringstream csv;
  res.trace.to_csv(csv);
  CHECK(csv.str() ==
        "cycle,state,en,start,dividend_in,divisor_in,dividend_out,divisor_out\n"
        "0,IDLE,0000,1,0,0,0,0\n"
        "1,SIGN,0001,0,0,0,0,0\n"
        "2,COEFF1,0010,0,350000000,b0000000,0,0\n"
        "3,MULT1,0100,0,350000000,b0000000,0,0\n"
        "4,COEFF2,0010,0,454000000,e6000000,454000000,e6000000\n"
        "5,MULT2,0100,0,454000000,e6000000,454000000,e6000000\n"
        "6,COEFF3,0010,0,4c3c00000,fcc00000,4c3c00000,fcc00000\n"
        "7,MULT3,0100,0,4c3c00000,fcc00000,4c3c00000,fcc00000\n"
        "8,COEFF4,0010,0,4d30f0000,fff30000,4d30f0000,fff30000\n"
        "9,MULT4,0100,0,4d30f0000,fff30000,4d30f0000,fff30000\n"
        "10,OUT,1000,0,4d34d30f0,ffffff30,4d34d30f0,ffffff30\n");
}

TEST_CASE("latency scales with the iteration count") {
  for (int iters : {1, 2, 3, 6}) {
    DividerConfig cfg = kCfg;
    cfg.iterations = iters;
    const CycleResult res =
        run_cycles(SignedInput(BigInt(53), 32), SignedInput(BigInt(11), 32), cfg);
    CHECK(res.trace.records.size() == static_cast<std::size_t>(2 * iters + 3));
    CHECK(to_string(res.trace.records.back().state) == "OUT");
  }
}

TEST_CASE("cycle model matches the behavioral divider") {
  SplitMix64 rng(51);
  for (int i = 0; i < 150; ++i) {
    const BigInt a = draw_signed(rng, 32);
    BigInt b = draw_signed(rng, 32);
    if (b == 0) b = 1;
    const SignedQuotient q = divide(SignedInput(a, 32), SignedInput(b, 32), kCfg);
    const CycleResult res = run_cycles(SignedInput(a, 32), SignedInput(b, 32), kCfg);
    CHECK(res.quotient == q);
  }
}

TEST_CASE("restart mid-computation") {
  CycleSimulator sim(kCfg);
  sim.set_inputs(SignedInput(BigInt(53), 32), SignedInput(BigInt(11), 32));
  for (int i = 0; i < 5; ++i) sim.step();
  CHECK_FALSE(sim.result().has_value());
  CHECK(sim.state() == FsmState{FsmPhase::mult, 2});

  sim.set_inputs(SignedInput(BigInt(-100), 32), SignedInput(BigInt(7), 32));
  const CycleRecord r = sim.step();
  CHECK(r.start == 1);
  CHECK(sim.state() == FsmState{FsmPhase::sign, 0});

  int guard = 0;
  while (!sim.result() && guard++ < 30) sim.step();
  REQUIRE(sim.result().has_value());
  CHECK(*sim.result() ==
        divide(SignedInput(BigInt(-100), 32), SignedInput(BigInt(7), 32), kCfg));
}

TEST_CASE("holds in idle after completion") {
  CycleSimulator sim(kCfg);
  sim.set_inputs(SignedInput(BigInt(53), 32), SignedInput(BigInt(11), 32));
  while (!sim.result()) sim.step();
  const RegisterFile settled = sim.regs();
  for (int i = 0; i < 3; ++i) {
    const CycleRecord r = sim.step();
    CHECK(to_string(r.state) == "IDLE");
    CHECK(r.en.bits == 0u);
    CHECK(r.start == 0);
  }
  CHECK(sim.regs() == settled);
  CHECK(sim.result().has_value());
}

TEST_CASE("input validation") {
  CycleSimulator sim(kCfg);
  CHECK_THROWS_AS(sim.set_inputs(SignedInput(BigInt(1), 16), SignedInput(BigInt(1), 32)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sim.step(), std::logic_error);  // inputs never set
  CHECK_THROWS_AS(
      run_cycles(SignedInput(BigInt(5), 32), SignedInput(BigInt(0), 32), kCfg),
      ZeroDivisorError);
}

}  // TEST_SUITE
