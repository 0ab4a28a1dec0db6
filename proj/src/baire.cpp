// Copyright 2026 The remetrize Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "remetrize/baire.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "remetrize/errors.hpp"

namespace remetrize {
namespace detail {

class PointState {
 public:
  PointState(BairePoint::Rule rule, std::string description)
      : rule_(std::move(rule)), description_(std::move(description)) {}
  PointState(BairePoint::StepRule rule, std::string description)
      : step_(std::move(rule)), description_(std::move(description)) {}

  Nat at(BairePoint::Position n) {
    if (step_) {
      std::lock_guard lock(mutex_);
      while (dense_.size() <= n) {
        Nat next = step_(std::span<const Nat>(dense_));
        dense_.push_back(std::move(next));
      }
      return dense_[n];
    }
    {
      std::lock_guard lock(mutex_);
      auto it = sparse_.find(n);
      if (it != sparse_.end()) return it->second;
    }
    Nat value = rule_(n);
    std::lock_guard lock(mutex_);
    sparse_.insert_or_assign(n, value);
    return value;
  }

  const std::string& description() const { return description_; }

  std::optional<Sequence> preperiod;
  std::optional<Sequence> period;

 private:
  BairePoint::Rule rule_;
  BairePoint::StepRule step_;
  std::string description_;
  std::mutex mutex_;
  std::vector<Nat> dense_;
  std::unordered_map<BairePoint::Position, Nat> sparse_;
};

}  // namespace detail

BairePoint::BairePoint() : BairePoint(constant(0)) {}

BairePoint BairePoint::from_rule(Rule rule, std::string description) {
  return BairePoint(std::make_shared<detail::PointState>(std::move(rule), std::move(description)));
}

BairePoint BairePoint::from_steps(StepRule rule, std::string description) {
  return BairePoint(std::make_shared<detail::PointState>(std::move(rule), std::move(description)));
}

BairePoint BairePoint::constant(const Nat& value) {
  return eventually_periodic({}, {value});
}

BairePoint BairePoint::eventually_periodic(Sequence preperiod, Sequence period) {
  std::string description = "ep(" + to_string(preperiod) + "," + to_string(period) + ")";
  auto state = std::make_shared<detail::PointState>(
      Rule([preperiod, period](Position n) -> Nat {
        if (n < preperiod.size()) return preperiod[n];
        if (period.empty()) return 0;
        return period[(n - preperiod.size()) % period.size()];
      }),
      std::move(description));
  state->preperiod = std::move(preperiod);
  state->period = std::move(period);
  return BairePoint(std::move(state));
}

BairePoint BairePoint::from_prefix(Sequence prefix) {
  return eventually_periodic(std::move(prefix), {});
}

Nat BairePoint::operator()(Position n) const { return state_->at(n); }

Sequence BairePoint::prefix(Position length) const {
  Sequence out;
  out.reserve(length);
  for (Position i = 0; i < length; ++i) out.push_back((*this)(i));
  return out;
}

SeqCode BairePoint::prefix_code(Position length) const { return encode(prefix(length)); }

const std::string& BairePoint::description() const { return state_->description(); }

const Sequence* BairePoint::preperiod() const {
  return state_->preperiod ? &*state_->preperiod : nullptr;
}

const Sequence* BairePoint::period() const {
  return state_->period ? &*state_->period : nullptr;
}

std::optional<std::uint64_t> first_disagreement(const BairePoint& a, const BairePoint& b,
                                                std::uint64_t budget) {
  if (a.id() == b.id()) return std::nullopt;
  for (std::uint64_t k = 0; k < budget; ++k) {
    if (a(k) != b(k)) return k;
  }
  return std::nullopt;
}

DistanceResult distance(const BairePoint& a, const BairePoint& b, std::uint64_t budget) {
  if (auto k = first_disagreement(a, b, budget)) {
    return {DistanceResult::Kind::Exact, Rational(1, nat_from_u64(*k + 1))};
  }
  return {DistanceResult::Kind::BelowThreshold, Rational(1, nat_from_u64(budget + 1))};
}

bool agree_on(const BairePoint& a, const BairePoint& b, std::uint64_t n) {
  return !first_disagreement(a, b, n).has_value();
}

bool in_basic_nbhd(const BairePoint& a, std::span<const Nat> u) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (a(i) != u[i]) return false;
  }
  return true;
}

bool in_basic_nbhd(const BairePoint& a, const SeqCode& s) { return in_basic_nbhd(a, decode(s)); }

std::uint64_t agreement_length(const Rational& radius) {
  if (radius.sign() <= 0) {
    throw std::domain_error("agreement_length needs a positive radius");
  }
  // 1/(K+1) < r  <=>  K + 1 > 1/r, so K = floor(1/r).
  Rational inv = Rational(1) / radius;
  Nat k = inv.numerator() / inv.denominator();
  return to_u64(k);
}

BairePoint pair_points(const BairePoint& a, const BairePoint& b) {
  return BairePoint::from_rule(
      [a, b](BairePoint::Position t) -> Nat {
        SeqCode code(nat_from_u64(t));
        if (lh(code) != 2) return 0;
        Nat i = proj(code, 0);
        Nat n = proj(code, 1);
        if (i == 0) return a(to_u64(n));
        if (i == 1) return b(to_u64(n));
        return 0;
      },
      "pair(" + a.description() + "," + b.description() + ")");
}

BairePoint slice(const BairePoint& g, const Nat& i) {
  return BairePoint::from_rule(
      [g, i](BairePoint::Position n) -> Nat {
        Nat position = pair_position(i, nat_from_u64(n));
        if (!fits_u64(position)) {
          throw PositionOverflow("position <" + i.get_str() + "," + std::to_string(n) +
                                 "> exceeds 64 bits");
        }
        return g(to_u64(position));
      },
      "slice(" + g.description() + "," + i.get_str() + ")");
}

BairePoint zip(const BairePoint& a, const BairePoint& b) {
  return BairePoint::from_rule(
      [a, b](BairePoint::Position n) -> Nat { return n % 2 == 0 ? a(n / 2) : b(n / 2); },
      "zip(" + a.description() + "," + b.description() + ")");
}

BairePoint even_part(const BairePoint& g) {
  return BairePoint::from_rule([g](BairePoint::Position n) -> Nat { return g(2 * n); },
                               "even(" + g.description() + ")");
}

BairePoint odd_part(const BairePoint& g) {
  return BairePoint::from_rule([g](BairePoint::Position n) -> Nat { return g(2 * n + 1); },
                               "odd(" + g.description() + ")");
}

BairePoint shift(const BairePoint& g, std::uint64_t k) {
  return BairePoint::from_rule([g, k](BairePoint::Position n) -> Nat { return g(n + k); },
                               "shift(" + g.description() + "," + std::to_string(k) + ")");
}

}  // namespace remetrize
