#pragma once

#include "kmforge/gcm.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kmforge {

// Elements of the strip algebra: coordinates over E_0..E_q followed by
// F_{a,b} (a + b <= q, ordered by a + b, then a).
using StripElt = std::vector<uint32_t>;

// (lambda; lambda_0, ..., lambda_q)
struct StripCoords
{
	uint32_t lambda = 0;
	std::vector<uint32_t> mu;
	bool operator==(const StripCoords &o) const { return lambda == o.lambda && mu == o.mu; }
	bool operator<(const StripCoords &o) const { return lambda != o.lambda ? lambda < o.lambda : mu < o.mu; }
};

class StripCtx
{
  public:
	// i, j zero-based; q prime with |a_ij| >= q
	StripCtx(const GCM &A, int i, int j, uint32_t q);

	uint32_t q() const { return q_; }
	int i() const { return i_; }
	int j() const { return j_; }
	int dim() const { return dim_; }
	int E(int m) const { return m; }
	int F(int a, int b) const;
	// (m, n): degree m alpha_i + n alpha_j of a basis slot
	std::pair<int, int> degree(int slot) const { return deg_[slot]; }

	StripElt zero() const { return StripElt(dim_, 0); }
	StripElt one() const;
	StripElt basis(int slot, uint32_t c = 1) const;
	StripElt add(const StripElt &a, const StripElt &b) const;
	StripElt scale(uint32_t c, const StripElt &a) const;
	StripElt mul(const StripElt &a, const StripElt &b) const;
	StripElt inverse(const StripElt &a) const;
	StripElt commutator(const StripElt &a, const StripElt &b) const;

	// (ad e_i)^{(s)} e_j
	StripElt x(int s) const;
	StripElt glambda(const StripCoords &c) const;
	StripCoords normal_form(const StripElt &g) const;
	bool is_grouplike(const StripElt &g) const;
	// coproduct restricted to the strip, as a dim x dim coefficient table
	std::vector<std::vector<uint32_t>> coproduct(const StripElt &u) const;

	StripCoords commutator_coords(const StripCoords &g, const StripCoords &h) const;
	std::vector<StripCoords> all_coords() const;

  private:
	uint32_t binom(int n, int k) const;

	GCM A_;
	int i_, j_;
	uint32_t q_;
	int dim_;
	std::vector<std::pair<int, int>> deg_;
	std::vector<std::pair<int, int>> fab_;  // (a, b) for F slots
	std::vector<std::vector<int>> fidx_;
	// sparse structure constants
	std::vector<std::vector<std::vector<std::pair<int, uint32_t>>>> table_;
};

struct C1CqReport
{
	size_t pairs = 0;
	size_t violations = 0;    // C_1 != C_q
	size_t formula_violations = 0;  // C_1 != lambda mu_0 - mu lambda_0
};
C1CqReport check_c1_cq(const StripCtx &S);

struct NondensityReport
{
	uint32_t q = 0;
	int i = 0, j = 0;
	size_t ambient_order = 0;
	size_t derived_order = 0;
	size_t uplus_image_order = 0;
	StripCoords witness;
	bool part1 = false;
	bool part2 = false;
	bool part2_attempted = false;
	std::string part2_refusal;
	bool roots_confirmed = false;
	bool derived_linked = false;  // (1,1) and (q,1) coordinates vanish together on the derived subgroup
};
NondensityReport nondensity_witness(const GCM &A, uint32_t q, int i, int j);

} // namespace kmforge
