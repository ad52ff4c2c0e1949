#pragma once

#include "kmforge/enveloping.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

namespace kmforge {

// Group element: coordinates of g - 1 over the Z-basis of the Kostant lattice
// U_Z (heights 1..N), reduced mod p.
using GElt = std::vector<uint32_t>;

struct GEltHash
{
	size_t operator()(const GElt &g) const;
};

struct Subgroup
{
	std::vector<GElt> gens;
	std::unordered_set<GElt, GEltHash> elems;
	size_t order() const { return elems.size(); }
	bool contains(const GElt &g) const { return elems.count(g) > 0; }
};

// Lower bound (characteristic p) on the finite quotient of the unipotent group
// U(F_p) modulo its height-(N+1) congruence subgroup, realised inside
// U_Z (x) F_p truncated above height N.
class QuotCtx
{
  public:
	QuotCtx(GCM A, uint32_t p, int N);

	const GCM &gcm() const { return A_; }
	uint32_t p() const { return p_; }
	int N() const { return N_; }
	int dim() const { return (int)coord_deg_.size(); }
	const RootVec &coord_degree(int c) const { return coord_deg_[c]; }
	int coord_height(int c) const { return coord_ht_[c]; }
	TruncCtx &env() { return *env_; }
	BandContext &lattice() { return *zband_; }

	size_t order_cap() const { return cap_; }
	void set_order_cap(size_t c) { cap_ = c; }

	GElt identity() const { return GElt(dim(), 0); }
	GElt mul(const GElt &a, const GElt &b) const;
	GElt inv(const GElt &a) const;
	GElt commutator(const GElt &a, const GElt &b) const;
	GElt power(const GElt &a, unsigned long n) const;
	// smallest height carrying a nonzero coordinate, N+1 for the identity
	int lowest_height(const GElt &a) const;

	// U_Z coordinates of a rational element of the positive enveloping algebra
	GElt from_env(const EnvElement &u) const;
	EnvElement to_env(const GElt &g) const;
	// x_alpha(lambda) for a real root alpha
	GElt root_element(const RootVec &alpha, long lambda);
	// exp(lambda x) for an element of the working lattice in degree a (needs p > N)
	GElt lattice_exp(const RootVec &a, int k, long lambda);
	// image of a lattice element of degree a (height n) in the height-n coordinates
	std::vector<uint32_t> embed_lie(const RootVec &a, const RatVec &lattice_coords);
	// range of coordinates of height n
	std::pair<int, int> height_range(int n) const;

	std::vector<GElt> generators();
	std::vector<GElt> real_root_generators();

	Subgroup closure(const std::vector<GElt> &gens) const;
	Subgroup normal_closure(std::vector<GElt> gens, const std::vector<GElt> &ambient) const;
	Subgroup commutator_subgroup(const Subgroup &H, const Subgroup &K, const std::vector<GElt> &ambient) const;
	// add generators one by one, skipping those already contained
	Subgroup generated(const std::vector<GElt> &cands) const;

	const Subgroup &full();

	GElt torus_conj(const std::vector<uint32_t> &t, const GElt &g) const;
	GElt lowering_conj(int i, long lambda, const GElt &g);

  private:
	void build_kostant();

	GCM A_;
	uint32_t p_;
	int N_;
	size_t cap_;
	std::unique_ptr<TruncCtx> env_;
	std::unique_ptr<BandContext> zband_;
	std::vector<RootVec> coord_deg_;
	std::vector<int> coord_ht_;
	std::vector<Mono> pbw_;                 // PBW monomials of heights 1..N
	std::map<Mono, int> pbw_index_;
	std::map<RootVec, std::pair<int, int>> deg_pbw_;  // [first, last) PBW slots per degree
	std::map<RootVec, int> deg_coord_;       // first coordinate per degree
	std::map<RootVec, RatBasis> kostant_;    // rows: Z-basis in PBW coordinates
	// sparse products of basis elements with height sum <= N
	std::vector<std::vector<std::vector<std::pair<int, uint32_t>>>> table_;
	std::unique_ptr<Subgroup> full_;
};

struct LcsLevel
{
	int n = 0;
	size_t order = 0;
	size_t coordinate_order = 0;  // order of U_n
	bool equals_coordinate = false;
};
std::vector<LcsLevel> lower_central_series(QuotCtx &ctx);

struct ZjlReport
{
	std::vector<size_t> dimension_orders;  // |D_n|, n = 1..N
	std::vector<size_t> lcs_orders;        // |Gamma_n|
	std::vector<size_t> coordinate_orders; // |U_n|
	bool d_equals_gamma = true;
	bool chain_ok = true;     // Gamma_n <= D_n <= U_n
	bool leading_ok = true;   // D_n/D_{n+1} matches the lattice in height n
	bool bracket_ok = true;
	bool p_operation_ok = true;
	bool holds = false;
	std::string failure;
};
ZjlReport zjl_check(QuotCtx &ctx);

bool p_power_lemma(QuotCtx &ctx, const GElt &g, int n);

struct CommutationConstant
{
	int i = 0, j = 0;
	RootVec root;
	Int c = 0;
};
// [x_alpha(r), x_beta(s)] = prod over the interval of x_{i alpha + j beta}(C r^i s^j)
std::vector<CommutationConstant> commutation_constants(const GCM &A, const RootVec &alpha, const RootVec &beta);

size_t minimal_U_image_order(QuotCtx &ctx);

size_t default_order_cap();

} // namespace kmforge
