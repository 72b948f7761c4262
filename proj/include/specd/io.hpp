#pragma once

#include <charconv>
#include <concepts>
#include <string>
#include <string_view>

#include "specd/optimize.hpp"

// Text output: shortest round-trip decimals and the line-oriented trace CSV.
// All formatting is locale-independent and byte-deterministic.

namespace specd {

/// Shortest decimal string that parses back to exactly the same value.
template <std::floating_point Real>
std::string format_real(Real v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

constexpr std::string_view stop_reason_name(stop_reason r) {
  switch (r) {
    case stop_reason::tolerance_met: return "tolerance_met";
    case stop_reason::max_iters: return "max_iters";
    case stop_reason::zero_derivative: return "zero_derivative";
    case stop_reason::out_of_domain: return "out_of_domain";
  }
  return "unknown";
}

constexpr std::string_view method_kind_name(method_kind m) {
  switch (m) {
    case method_kind::sgm: return "sgm";
    case method_kind::isgm: return "isgm";
    case method_kind::sm: return "sm";
  }
  return "unknown";
}

/// Trace CSV with columns k,x,f_x,subopt,deriv,step,envelope,x_best,f_best,
/// stop_reason. The stop reason appears on the final row only; the envelope
/// column is blank for schedules without one. LF line endings.
template <std::floating_point Real>
std::string trace_csv(const run_trace<Real>& tr, Real f_star) {
  std::string out = "k,x,f_x,subopt,deriv,step,envelope,x_best,f_best,stop_reason\n";
  for (std::size_t i = 0; i < tr.records.size(); ++i) {
    const auto& r = tr.records[i];
    out += std::to_string(r.k);
    out += ',';
    out += format_real(r.x);
    out += ',';
    out += format_real(r.fx);
    out += ',';
    out += format_real(r.fx - f_star);
    out += ',';
    out += format_real(r.deriv);
    out += ',';
    out += format_real(r.step);
    out += ',';
    if (r.envelope) out += format_real(*r.envelope);
    out += ',';
    out += format_real(r.x_best);
    out += ',';
    out += format_real(r.f_best);
    out += ',';
    if (i + 1 == tr.records.size()) out += stop_reason_name(tr.stop);
    out += '\n';
  }
  return out;
}

}  // namespace specd
