#ifndef RCST_COST_HPP
#define RCST_COST_HPP

#include <string>

#include "rcst/errors.hpp"
#include "rcst/int128.hpp"

namespace rcst {

// Costs carry the unit they were computed in. Original-unit values come from
// the input weights w, scaled-unit values from perturbed weights W = w*D + rho.
// Mixing units in arithmetic or comparison is a hard error; a scaled value is
// never silently divided back into original units.
enum class CostUnit { original, scaled };

inline const char* to_string(CostUnit u) {
    return u == CostUnit::original ? "original" : "scaled";
}

class CostValue {
  public:
    CostValue() : v_(0), u_(CostUnit::original) {}
    CostValue(int128 v, CostUnit u) : v_(v), u_(u) {}

    static CostValue zero(CostUnit u) { return CostValue(0, u); }

    int128 value() const { return v_; }
    CostUnit unit() const { return u_; }

    CostValue operator+(const CostValue& o) const {
        require_same(o);
        return CostValue(checked_add(v_, o.v_), u_);
    }
    CostValue& operator+=(const CostValue& o) {
        *this = *this + o;
        return *this;
    }
    CostValue scaled_by(int128 k) const { return CostValue(checked_mul(v_, k), u_); }

    bool operator==(const CostValue& o) const {
        require_same(o);
        return v_ == o.v_;
    }
    bool operator!=(const CostValue& o) const { return !(*this == o); }
    bool operator<(const CostValue& o) const {
        require_same(o);
        return v_ < o.v_;
    }
    bool operator<=(const CostValue& o) const {
        require_same(o);
        return v_ <= o.v_;
    }

  private:
    void require_same(const CostValue& o) const {
        if (u_ != o.u_) throw UnitMismatchError("mixed original and scaled units");
    }

    int128 v_;
    CostUnit u_;
};

inline std::string to_string(const CostValue& c) { return to_string(c.value()); }

} // namespace rcst

#endif
