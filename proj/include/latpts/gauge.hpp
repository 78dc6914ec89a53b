#pragma once

#include "latpts/rational.hpp"

#include <compare>

namespace latpts {

/// A nonnegative gauge (Minkowski functional) value: either a rational, or the
/// square root of a rational (ellipsoids). Ordering and equality are by value;
/// comparisons go through squares, which is exact because values are >= 0.
class GaugeValue {
  public:
    enum class Kind { Rational, Sqrt };

    GaugeValue() = default;

    static GaugeValue rational(Rational v) {
        if (v < 0)
            throw InvariantError("gauge value must be nonnegative");
        return GaugeValue(Kind::Rational, std::move(v));
    }
    /// sqrt(square).
    static GaugeValue sqrt_of(Rational square) {
        if (square < 0)
            throw InvariantError("gauge value must be nonnegative");
        return GaugeValue(Kind::Sqrt, std::move(square));
    }

    Kind kind() const { return kind_; }
    /// The gauge itself for Kind::Rational, its square for Kind::Sqrt.
    const Rational &stored() const { return value_; }

    Rational squared() const { return kind_ == Kind::Rational ? Rational(value_ * value_) : value_; }

    bool is_zero() const { return value_ == 0; }

    /// The value as a + b*sqrt(r).
    QuadraticSurd as_surd() const {
        if (kind_ == Kind::Rational)
            return QuadraticSurd::rational(value_);
        return {0, 1, value_};
    }

    /// mu * g for rational mu >= 0.
    GaugeValue scaled(const Rational &mu) const {
        if (mu < 0)
            throw InvariantError("negative gauge scale");
        return kind_ == Kind::Rational ? rational(value_ * mu) : sqrt_of(value_ * mu * mu);
    }

    friend std::strong_ordering operator<=>(const GaugeValue &a, const GaugeValue &b) {
        int c = cmp(a.squared(), b.squared());
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend bool operator==(const GaugeValue &a, const GaugeValue &b) { return a.squared() == b.squared(); }

    /// Same kind and same stored value (serialization identity).
    bool identical(const GaugeValue &o) const { return kind_ == o.kind_ && value_ == o.value_; }

  private:
    GaugeValue(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}

    Kind kind_ = Kind::Rational;
    Rational value_{0};
};

}  // namespace latpts
