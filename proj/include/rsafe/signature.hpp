// signature.hpp -- input/output signatures and letters of the product
// alphabet (output valuation, input valuation).

#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsafe {

struct signature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One position of a run: the output valuation emitted first, then the
// input valuation read afterwards. Valuations are bitmasks over the
// proposition lists of the ambient Signature.
struct Letter {
  std::uint32_t out = 0;
  std::uint32_t in = 0;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Interface declaration (AP_I, AP_O). Propositions are kept in declaration
// order; bit i of a valuation refers to the i-th proposition of its list.
class Signature {
 public:
  Signature() = default;

  Signature(std::vector<std::string> inputs, std::vector<std::string> outputs)
      : ap_in_(std::move(inputs)), ap_out_(std::move(outputs)) {
    if (ap_in_.size() + ap_out_.size() > 16)
      throw signature_error("signature: more than 16 atomic propositions");
    std::set<std::string> seen;
    for (const auto& p : ap_in_)
      if (!seen.insert(p).second)
        throw signature_error("signature: duplicate proposition '" + p + "'");
    for (const auto& p : ap_out_)
      if (!seen.insert(p).second)
        throw signature_error("signature: duplicate proposition '" + p + "'");
  }

  const std::vector<std::string>& inputs() const { return ap_in_; }
  const std::vector<std::string>& outputs() const { return ap_out_; }

  std::size_t num_inputs() const { return std::size_t{1} << ap_in_.size(); }
  std::size_t num_outputs() const { return std::size_t{1} << ap_out_.size(); }
  std::size_t num_letters() const { return num_inputs() * num_outputs(); }

  // Canonical letter order: by output valuation, then input valuation.
  std::size_t letter_index(Letter l) const { return l.out * num_inputs() + l.in; }

  Letter letter_at(std::size_t idx) const {
    return Letter{static_cast<std::uint32_t>(idx / num_inputs()),
                  static_cast<std::uint32_t>(idx % num_inputs())};
  }

  // Is proposition name an input (index into ap_in) or output (index into
  // ap_out)? Returns {is_input, bit index}; throws if undeclared.
  std::pair<bool, unsigned> lookup(const std::string& name) const {
    for (unsigned i = 0; i < ap_in_.size(); ++i)
      if (ap_in_[i] == name) return {true, i};
    for (unsigned i = 0; i < ap_out_.size(); ++i)
      if (ap_out_[i] == name) return {false, i};
    throw signature_error("undeclared proposition '" + name + "'");
  }

  bool declares(const std::string& name) const {
    return std::find(ap_in_.begin(), ap_in_.end(), name) != ap_in_.end() ||
           std::find(ap_out_.begin(), ap_out_.end(), name) != ap_out_.end();
  }

  bool holds(const std::string& name, Letter l) const {
    auto [is_in, bit] = lookup(name);
    std::uint32_t v = is_in ? l.in : l.out;
    return (v >> bit) & 1u;
  }

  std::string valuation_to_string(std::uint32_t v,
                                  const std::vector<std::string>& aps) const {
    std::string s = "{";
    bool first = true;
    for (unsigned i = 0; i < aps.size(); ++i)
      if ((v >> i) & 1u) {
        if (!first) s += ",";
        s += aps[i];
        first = false;
      }
    return s + "}";
  }

  std::string letter_to_string(Letter l) const {
    return "(" + valuation_to_string(l.out, ap_out_) + "," +
           valuation_to_string(l.in, ap_in_) + ")";
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<std::string> ap_in_;
  std::vector<std::string> ap_out_;
};

// A finite certificate for omega-word membership: stem . loop^omega.
struct Lasso {
  std::vector<Letter> stem;
  std::vector<Letter> loop;
};

inline std::string lasso_to_string(const Signature& sig, const Lasso& l) {
  std::ostringstream os;
  for (Letter x : l.stem) os << sig.letter_to_string(x) << ' ';
  os << "( ";
  for (Letter x : l.loop) os << sig.letter_to_string(x) << ' ';
  os << ")^w";
  return os.str();
}

}  // namespace rsafe
