#include "goldmitch/cyclesim.hpp"

#include <sstream>

#include "goldmitch/goldschmidt.hpp"
#include "goldmitch/normalize.hpp"

namespace goldmitch {

std::string to_string(const FsmState& st) {
  switch (st.phase) {
    case FsmPhase::idle: return "IDLE";
    case FsmPhase::sign: return "SIGN";
    case FsmPhase::coeff: return "COEFF" + std::to_string(st.iteration);
    case FsmPhase::mult: return "MULT" + std::to_string(st.iteration);
    case FsmPhase::out: return "OUT";
  }
  return "?";
}

std::string EnableBits::to_binary() const {
  std::string s(4, '0');
  for (int i = 0; i < 4; ++i)
    if (test(3 - i)) s[i] = '1';
  return s;
}

EnableBits enable_of(const FsmState& st) {
  switch (st.phase) {
    case FsmPhase::idle: return EnableBits{0u};
    case FsmPhase::sign: return EnableBits{1u << 0};
    case FsmPhase::coeff: return EnableBits{1u << 1};
    case FsmPhase::mult: return EnableBits{1u << 2};
    case FsmPhase::out: return EnableBits{1u << 3};
  }
  return EnableBits{0u};
}

RegisterFile RegisterFile::initial(const DividerConfig& cfg) {
  const FxValue dzero = FxValue::zero(cfg.dividend_format());
  const FxValue szero = FxValue::zero(cfg.divisor_format());
  return RegisterFile{BigUint(0), BigUint(0), dzero, szero, dzero, szero,
                      dzero, szero, szero, 0};
}

TriggerResult trigger_step(const SignedInput& dividend, const SignedInput& divisor,
                           const RegisterFile& regs) {
  const BigUint draw = dividend.raw_bits();
  const BigUint sraw = divisor.raw_bits();
  const int start = (draw == regs.dividend_1 && sraw == regs.divisor_1) ? 0 : 1;
  RegisterFile next = regs;
  next.dividend_1 = draw;
  next.divisor_1 = sraw;
  return TriggerResult{start, std::move(next)};
}

FsmStepResult fsm_step(const FsmState& state, int start, const DividerConfig& cfg) {
  FsmState next;
  if (start) {
    next = FsmState{FsmPhase::sign, 0};
  } else {
    switch (state.phase) {
      case FsmPhase::idle: next = FsmState{FsmPhase::idle, 0}; break;
      case FsmPhase::sign: next = FsmState{FsmPhase::coeff, 1}; break;
      case FsmPhase::coeff: next = FsmState{FsmPhase::mult, state.iteration}; break;
      case FsmPhase::mult:
        next = state.iteration < cfg.iterations
                   ? FsmState{FsmPhase::coeff, state.iteration + 1}
                   : FsmState{FsmPhase::out, 0};
        break;
      case FsmPhase::out: next = FsmState{FsmPhase::idle, 0}; break;
    }
  }
  return FsmStepResult{next, enable_of(next)};
}

RegisterFile register_step(const EnableBits& en, const DatapathSignals& sig,
                           const RegisterFile& regs) {
  RegisterFile next = regs;
  if (en.test(0)) {
    next.dividend_fix = *sig.dividend_fix;
    next.divisor_fix = *sig.divisor_fix;
    next.sign = *sig.sign;
    next.dividend_in = *sig.dividend_fix;
    next.divisor_in = *sig.divisor_fix;
  }
  if (en.test(1)) next.coeff = *sig.coeff;
  if (en.test(2)) {
    next.dividend_out = *sig.dividend_prod;
    next.divisor_out = *sig.divisor_prod;
    next.dividend_in = *sig.dividend_prod;
    next.divisor_in = *sig.divisor_prod;
  }
  return next;
}

void CycleTrace::to_csv(std::ostream& os) const {
  os << "cycle,state,en,start,dividend_in,divisor_in,dividend_out,divisor_out\n";
  for (const CycleRecord& r : records) {
    std::ostringstream hexes;
    hexes << std::hex << r.dividend_in << ',' << r.divisor_in << ',' << r.dividend_out
          << ',' << r.divisor_out;
    os << r.cycle << ',' << to_string(r.state) << ',' << r.en.to_binary() << ',' << r.start
       << ',' << hexes.str() << '\n';
  }
}

CycleSimulator::CycleSimulator(DividerConfig cfg)
    : cfg_(cfg), regs_(RegisterFile::initial(cfg)), state_{FsmPhase::idle, 0} {
  cfg_.validate();
}

void CycleSimulator::set_inputs(SignedInput dividend, SignedInput divisor) {
  if (dividend.width != cfg_.width_dividend || divisor.width != cfg_.width_divisor)
    throw std::invalid_argument("set_inputs: operand width does not match config");
  dividend_ = std::move(dividend);
  divisor_ = std::move(divisor);
}

CycleRecord CycleSimulator::step() {
  if (!dividend_ || !divisor_) throw std::logic_error("step: inputs not set");
  const TriggerResult trig = trigger_step(*dividend_, *divisor_, regs_);
  const EnableBits en = enable_of(state_);

  DatapathSignals sig;
  if (en.test(0)) {
    const UnsignedPair conv = input_sign_convert(*dividend_, *divisor_);
    if (conv.divisor_unsigned == 0) throw ZeroDivisorError("cyclesim: zero divisor");
    NormalizedPair norm = normalize_pair(conv.dividend_unsigned, conv.divisor_unsigned, cfg_);
    sig.dividend_fix = std::move(norm.dividend_fix);
    sig.divisor_fix = std::move(norm.divisor_fix);
    sig.sign = conv.sign;
  }
  if (en.test(1)) sig.coeff = iteration_coefficient(regs_.divisor_in);
  if (en.test(2)) {
    sig.dividend_prod = strategy_multiply(regs_.coeff, regs_.dividend_in, cfg_.strategy, cfg_)
                            .refit(cfg_.dividend_format());
    sig.divisor_prod = strategy_multiply(regs_.coeff, regs_.divisor_in, cfg_.strategy, cfg_)
                           .refit(cfg_.divisor_format());
  }

  CycleRecord rec{cycle_,
                  state_,
                  en,
                  trig.start,
                  regs_.dividend_in.raw(),
                  regs_.divisor_in.raw(),
                  regs_.dividend_out.raw(),
                  regs_.divisor_out.raw()};
  trace_.records.push_back(rec);

  // Clock edge.
  if (en.test(3)) result_ = output_sign_convert(regs_.dividend_out, regs_.sign, cfg_);
  RegisterFile next = register_step(en, sig, regs_);
  next.dividend_1 = trig.regs.dividend_1;
  next.divisor_1 = trig.regs.divisor_1;
  regs_ = std::move(next);
  state_ = fsm_step(state_, trig.start, cfg_).state;
  ++cycle_;
  return rec;
}

CycleResult run_cycles(const SignedInput& dividend, const SignedInput& divisor,
                       const DividerConfig& cfg) {
  if (divisor.value == 0) throw ZeroDivisorError("run_cycles: zero divisor");
  CycleSimulator sim(cfg);
  sim.set_inputs(dividend, divisor);
  const long limit = 2L * cfg.iterations + 8;
  while (!sim.result()) {
    if (sim.cycle() > limit) throw std::logic_error("run_cycles: no completion");
    sim.step();
  }
  return CycleResult{*sim.result(), sim.trace()};
}

}  // namespace goldmitch
