#ifndef GOLDMITCH_CYCLESIM_HPP
#define GOLDMITCH_CYCLESIM_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "goldmitch/fxp.hpp"

namespace goldmitch {

enum class FsmPhase { idle, sign, coeff, mult, out };

// Controller state. iteration is 1-based and meaningful for coeff/mult only.
struct FsmState {
  FsmPhase phase = FsmPhase::idle;
  int iteration = 0;
  bool operator==(const FsmState&) const = default;
};

std::string to_string(const FsmState& st);

// One-hot enable vector: bit 0 sign converter, bit 1 adder/coefficient,
// bit 2 multipliers, bit 3 output converter. All-zero while idle.
struct EnableBits {
  unsigned bits = 0;
  bool test(int i) const { return (bits >> i) & 1u; }
  // "en[3] en[2] en[1] en[0]" as a 4-character binary string.
  std::string to_binary() const;
  bool operator==(const EnableBits&) const = default;
};

// The Moore output each state drives during its cycle.
EnableBits enable_of(const FsmState& st);

// Datapath registers plus the trigger history. Registers change only at the
// clock edge of a step; all values pre-edge are the previous cycle's.
struct RegisterFile {
  BigUint dividend_1;  // previous cycle's raw input bits
  BigUint divisor_1;
  FxValue dividend_fix, divisor_fix;
  FxValue dividend_in, divisor_in;
  FxValue dividend_out, divisor_out;
  FxValue coeff;  // registered adder output m = 2 - divisor_in
  int sign = 0;

  static RegisterFile initial(const DividerConfig& cfg);
  bool operator==(const RegisterFile&) const = default;
};

struct TriggerResult {
  int start;
  RegisterFile regs;  // history registers shifted to the current inputs
};

// Change detector: start = 0 iff both inputs equal their history bits.
TriggerResult trigger_step(const SignedInput& dividend, const SignedInput& divisor,
                           const RegisterFile& regs);

struct FsmStepResult {
  FsmState state;  // next state
  EnableBits en;   // the enable that state will drive
};

// IDLE -(start)-> SIGN -> (COEFF(i) -> MULT(i)) for i = 1..iterations -> OUT
// -> IDLE; a start pulse from any state restarts at SIGN; IDLE holds while
// start = 0.
FsmStepResult fsm_step(const FsmState& state, int start, const DividerConfig& cfg);

// Combinational unit outputs feeding the register file; only the fields of
// the enabled unit are populated.
struct DatapathSignals {
  std::optional<FxValue> dividend_fix, divisor_fix;  // en[0]
  std::optional<int> sign;                           // en[0]
  std::optional<FxValue> coeff;                      // en[1]
  std::optional<FxValue> dividend_prod, divisor_prod;  // en[2]
};

// Latching rules: en[0] loads the fix registers, the sign bit, and the in
// registers (iteration 1 consumes the normalized values); en[1] loads coeff;
// en[2] loads the multiplier outputs into the out registers and forwards
// them into the in registers for the next iteration. Trigger history is not
// touched here.
RegisterFile register_step(const EnableBits& en, const DatapathSignals& sig,
                           const RegisterFile& regs);

// Pre-edge snapshot of one cycle.
struct CycleRecord {
  long cycle;
  FsmState state;
  EnableBits en;
  int start;
  BigUint dividend_in, divisor_in, dividend_out, divisor_out;
};

struct CycleTrace {
  std::vector<CycleRecord> records;
  // cycle,state,en,start,dividend_in,divisor_in,dividend_out,divisor_out
  // with raw hexadecimal register values; one header line first.
  void to_csv(std::ostream& os) const;
};

// Clock-by-clock model of the divider. Drive inputs, call step() once per
// cycle; result() is set at the edge of the OUT cycle.
class CycleSimulator {
 public:
  explicit CycleSimulator(DividerConfig cfg);

  void set_inputs(SignedInput dividend, SignedInput divisor);
  CycleRecord step();

  const DividerConfig& config() const { return cfg_; }
  const RegisterFile& regs() const { return regs_; }
  const FsmState& state() const { return state_; }
  long cycle() const { return cycle_; }
  const std::optional<SignedQuotient>& result() const { return result_; }
  const CycleTrace& trace() const { return trace_; }

 private:
  DividerConfig cfg_;
  RegisterFile regs_;
  FsmState state_;
  std::optional<SignedInput> dividend_, divisor_;
  std::optional<SignedQuotient> result_;
  CycleTrace trace_;
  long cycle_ = 0;
};

struct CycleResult {
  SignedQuotient quotient;
  CycleTrace trace;
};

// Runs one full division: the trace spans the cycle where start first reads
// 1 through the OUT cycle inclusive — 2*iterations + 3 records. The quotient
// is bit-identical to the behavioral divide() under the same config.
CycleResult run_cycles(const SignedInput& dividend, const SignedInput& divisor,
                       const DividerConfig& cfg);

}  // namespace goldmitch

#endif
