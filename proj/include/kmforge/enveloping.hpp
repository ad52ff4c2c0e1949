#pragma once

#include "kmforge/liealg.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace kmforge {

// PBW monomial prod x_a^{(k_a)} over Lie basis ids a (increasing), k_a >= 1.
// The empty monomial is the unit.
using Mono = std::vector<std::pair<int, int>>;

struct EnvElement
{
	std::map<Mono, Rat> terms;
	Rat constant() const;
	bool operator==(const EnvElement &o) const { return terms == o.terms; }
};

using Tensor = std::map<std::pair<Mono, Mono>, Rat>;

// Positive part of the enveloping algebra truncated above height N, in the
// divided-power PBW basis of the band basis of n+. Coefficients live in Q or in
// F_p with p > N.
class TruncCtx
{
  public:
	TruncCtx(GCM A, int N, Scalars k);

	BandContext &band() { return *band_; }
	const GCM &gcm() const { return band_->gcm(); }
	int N() const { return N_; }
	const Scalars &scalars() const { return S_; }

	// Lie basis of n+ up to height N in canonical order
	int num_basis() const { return (int)ids_.size(); }
	const RootVec &basis_degree(int id) const { return ids_[id].first; }
	int basis_slot(int id) const { return ids_[id].second; }
	int id_of(const RootVec &a, int k) const;
	RootVec degree(const Mono &m) const;
	int height(const Mono &m) const;
	// all PBW monomials of the given degree, sorted
	std::vector<Mono> monomials(const RootVec &a);
	// all PBW monomials of height 1..N
	std::vector<Mono> all_monomials();

	EnvElement one() const;
	EnvElement mono(const Mono &m, Rat c = 1) const;
	EnvElement from_lie(const LieElement &x) const;
	EnvElement add(const EnvElement &a, const EnvElement &b) const;
	EnvElement scale(const Rat &c, const EnvElement &a) const;
	EnvElement mul(const EnvElement &a, const EnvElement &b);
	EnvElement power(const EnvElement &a, long n);
	void normalize(EnvElement &a) const;

	Tensor coproduct(const EnvElement &u) const;
	Tensor tensor(const EnvElement &a, const EnvElement &b) const;
	Tensor tensor_mul(const Tensor &a, const Tensor &b);
	Rat counit(const EnvElement &u) const { return u.constant(); }
	EnvElement antipode(const EnvElement &u);
	// (id (x) id) -> U applied to a tensor: m(tau (x) id) and similar helpers
	EnvElement mul_tensor(const Tensor &t, bool antipode_left);

	bool is_grouplike(const EnvElement &g);
	EnvElement twisted_exp(const LieElement &x, const Rat &lambda);
	EnvElement inverse(const EnvElement &g) { return antipode(g); }

	// coordinates over the basis ids, product in id order
	std::vector<Rat> normal_form(const EnvElement &g);
	EnvElement from_coords(const std::vector<Rat> &lambda);

	EnvElement s_i_star(int i, const EnvElement &u);
	bool restrict_to(const std::vector<RootVec> &psi, const EnvElement &u);

	// x_a^k over Q in ordinary (not divided) powers
	std::map<Mono, Rat> straighten(const std::vector<int> &seq);

  private:
	const std::map<Mono, Rat> &mul_mono(const Mono &a, const Mono &b);

	int N_;
	Scalars S_;
	std::unique_ptr<BandContext> band_;
	std::vector<std::pair<RootVec, int>> ids_;
	std::map<RootVec, int> first_id_;
	std::recursive_mutex mu_;
	std::map<std::vector<int>, std::map<Mono, Rat>> straight_;
	std::map<std::pair<Mono, Mono>, std::map<Mono, Rat>> mulmemo_;
	std::map<std::pair<int, int>, LieElement> sstar_;
};

} // namespace kmforge
