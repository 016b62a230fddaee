#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wbc/rational.hpp"
#include "wbc/source.hpp"

namespace wbc {

/// Parameters of one protocol instance.
///
/// mu and lambda are kept as exact rationals so that T = ceil(mu m) and ceil(lambda T)
/// never drift across an integer boundary. Q = T - ceil(lambda T) + 1 is the smallest number
/// of inconsistent indices that makes the cross-check reject a check set of length T.
class ProtocolParams {
 public:
  /// Throws ParameterError unless 0 < mu < 1/3, 1/2 < lambda < 1 and m >= 1.
  ProtocolParams(Rational mu, Rational lambda, int m);

  const Rational& mu() const { return mu_; }
  const Rational& lambda() const { return lambda_; }
  int m() const { return m_; }
  int T() const { return T_; }
  int Q() const { return Q_; }
  /// ceil(lambda * T): consistent indices required when |rho01| == T.
  int lambda_T_ceil() const { return lambda_T_ceil_; }

  ProtocolParams with_m(int m) const { return ProtocolParams(mu_, lambda_, m); }

 private:
  Rational mu_;
  Rational lambda_;
  int m_;
  int T_;
  int Q_;
  int lambda_T_ceil_;
};

struct Thresholds {
  int T;
  int Q;
};

Thresholds derive_thresholds(const Rational& mu, const Rational& lambda, int m);

enum class Output : std::uint8_t { Zero = 0, One = 1, Abort = 2 };

Output output_of(int bit);
std::string to_string(Output v);

enum class Receiver : std::uint8_t { R0, R1 };

/// R1-faulty is not modelled: R1 never sends, so it cannot influence anyone.
enum class AdversaryConfig : std::uint8_t { NoFaulty, SenderFaulty, R0Faulty };

std::string to_string(AdversaryConfig c);
/// Accepts "no-faulty", "s-faulty", "r0-faulty". Throws ParameterError otherwise.
AdversaryConfig parse_config(const std::string& name);

/// Sorted, duplicate-free, zero-based row indices.
using IndexSet = std::vector<int>;

struct Transcript {
  AdversaryConfig config = AdversaryConfig::NoFaulty;
  int x_S = 0;  // for a faulty sender: the bit it claims to R0
  int x0 = 0;
  int x1 = 0;
  IndexSet sigma0;
  IndexSet sigma1;
  int y_S = 0;
  Output y0 = Output::Abort;  // for a faulty R0: the value it forwards to R1
  Output y_tilde1 = Output::Abort;
  Output y01 = Output::Abort;
  IndexSet rho01;
  Output y1 = Output::Abort;
};

struct InvocationMessages {
  int x0 = 0;
  IndexSet sigma0;
  int x1 = 0;
  IndexSet sigma1;
};

/// Honest invocation: the check set holds every row where S measured x_S x_S.
InvocationMessages invocation_honest(const Event& e, int x_S);

/// Check phase for R_j. Returns x_j when |sigma| >= T and R_j measured 1 - x_j on every row
/// of sigma, otherwise Abort. For R1 the result is the intermediate value y~1.
Output check_phase(const Event& e, Receiver receiver, int x_j, const IndexSet& sigma, const ProtocolParams& p);

/// Cross-check phase of R1. Returns y01 when y~1 and y01 are distinct bits, |rho01| >= T, and
/// R1 measured 1 - y01 on at least lambda T + |rho01| - T rows of rho01; otherwise y~1.
Output cross_check(Output y_tilde1, Output y01, const IndexSet& rho01, const Event& e, const ProtocolParams& p);

// -- Adversary hooks ---------------------------------------------------------------------
//
// A faulty component only ever sees its own measurement record.

/// What S sees: its two bits per row (0..3, first qubit as high bit).
struct SenderView {
  std::vector<int> pairs;
};

/// What R0 sees after the invocation phase.
struct Receiver0View {
  std::vector<int> bits;
  int x0 = 0;
  IndexSet sigma0;
};

SenderView sender_view(const Event& e);
Receiver0View receiver0_view(const Event& e, int x0, const IndexSet& sigma0);

/// Reported when an incomplete strategy is undefined for the observed local data.
struct OutOfDomain {
  std::string reason;
};

struct CrossCallMessage {
  Output y01 = Output::Abort;
  IndexSet rho01;
};

class FaultySender {
 public:
  virtual ~FaultySender() = default;
  virtual std::variant<InvocationMessages, OutOfDomain> invoke(const SenderView& view,
                                                               const ProtocolParams& p) const = 0;
};

class FaultyReceiver0 {
 public:
  virtual ~FaultyReceiver0() = default;
  virtual std::variant<CrossCallMessage, OutOfDomain> cross_call(const Receiver0View& view,
                                                                 const ProtocolParams& p) const = 0;
};

/// monostate: every component honest.
using Adversary = std::variant<std::monostate, const FaultySender*, const FaultyReceiver0*>;

AdversaryConfig config_of(const Adversary& adversary);

/// Runs the four phases. Honest components follow the protocol exactly; the faulty one (if any)
/// substitutes its messages. For a faulty sender x_S is ignored.
std::variant<Transcript, OutOfDomain> run_protocol(const Event& e, const ProtocolParams& p, int x_S,
                                                   const Adversary& adversary = {});

/// Composition used by run_protocol once the sender's messages are fixed.
Transcript run_with_invocation(const Event& e, const ProtocolParams& p, AdversaryConfig config, int claimed_x_S,
                               const InvocationMessages& messages);

/// Composition used by run_protocol for a faulty R0 with a fixed cross-call message.
Transcript run_with_cross_call(const Event& e, const ProtocolParams& p, int x_S, const CrossCallMessage& message);

// -- Truth tables ------------------------------------------------------------------------

enum class Verdict : std::uint8_t { Achieved, Failure };

std::string to_string(Verdict v);

/// Weak broadcast among three parties with at most one faulty.
/// Validity binds only correct components; consistency forbids two correct receivers
/// from holding distinct bits.
Verdict classify_weak_broadcast(AdversaryConfig config, int y_S, Output y0, Output y1);

/// Broadcast with binary outputs. Throws ParameterError if either output is Abort.
Verdict classify_broadcast(AdversaryConfig config, int y_S, Output y0, Output y1);

Verdict classify(const Transcript& t);

}  // namespace wbc
