#pragma once

#include "kmforge/freelie.hpp"
#include "kmforge/gcm.hpp"
#include "kmforge/roots.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace kmforge {

// Element of the band-truncated Kac-Moody algebra. The negative sector uses the
// basis f_{a,k} := omega(e_{a,k}) for the Chevalley involution omega
// (e_i <-> f_i, h -> -h), with degrees stored as positive vectors.
struct LieElement
{
	std::map<RootVec, RatVec, DegreeLess> pos;
	RatVec cartan;
	std::map<RootVec, RatVec, DegreeLess> neg;

	bool is_zero() const;
	bool operator==(const LieElement &o) const;
	// degree of a homogeneous element: positive, zero (cartan) or negative
	std::optional<RootVec> degree(int rank) const;
};

LieElement operator+(const LieElement &a, const LieElement &b);
LieElement operator-(const LieElement &a, const LieElement &b);
LieElement operator*(const Rat &c, const LieElement &a);
LieElement omega(const LieElement &x);

struct BasisId
{
	int sector;  // +1, 0, -1
	RootVec deg; // for sector 0: the unit vector of the coroot
	int k;
	bool operator<(const BasisId &o) const
	{
		if (sector != o.sector)
			return sector < o.sector;
		if (deg != o.deg)
			return deg < o.deg;
		return k < o.k;
	}
};

struct DegreeData
{
	RootVec deg;
	bool full = false;  // every Lyndon word lies in the Serre ideal
	Int lyndon_total = 0;
	std::vector<Word> words;
	std::map<Word, int> col;
	Echelon ideal;
	std::vector<int> free;  // quotient coordinates: free columns of the ideal
	int dim = 0;
	RatBasis basis;  // rows over the free columns
};

// Truncated Kac-Moody algebra g(A) with positive part up to height N.
// Integer and Prime contexts use the working lattice (see README); Rational
// contexts use the free Lyndon columns of the Serre quotient.
class BandContext
{
  public:
	BandContext(GCM A, int N, Scalars s);

	const GCM &gcm() const { return A_; }
	int rank() const { return A_.rank(); }
	int N() const { return N_; }
	const Scalars &scalars() const { return S_; }
	FreeLie &free_lie() { return fl_; }

	const DegreeData &degree(const RootVec &a);
	int dim(const RootVec &a);
	int serre_ideal_dim(const RootVec &a);
	// degrees of height <= N carrying a nonzero root space, canonical order
	std::vector<RootVec> positive_degrees();

	// Lyndon lift of a coordinate vector and back
	LieVecQ lift(const RootVec &a, const RatVec &coords);
	RatVec coords_of(const RootVec &a, const LieVecQ &v);

	LieElement zero() const;
	LieElement e(int i);
	LieElement f(int i);
	LieElement h(int i);
	LieElement basis_element(const RootVec &a, int k);
	LieElement neg_basis_element(const RootVec &a, int k);
	// lift a Lyndon combination of degree a into the positive sector
	LieElement from_lyndon(const RootVec &a, const LieVecQ &v);

	void normalize(LieElement &x) const;

	LieElement bracket(const LieElement &x, const LieElement &y);
	LieElement ad_e(int j, const LieElement &x);
	LieElement ad_f(int j, const LieElement &x);
	// (ad e_{+-alpha_i})^s x / s!
	LieElement ad_divided_power(int i, int sign, int s, const LieElement &x);
	LieElement s_i_star(int i, const LieElement &x);
	LieElement real_root_vector(const RootVec &alpha);

	// [basis(beta,k), basis(gamma,l)] as coordinates in degree beta+gamma
	const std::vector<std::vector<RatVec>> &structure(const RootVec &beta, const RootVec &gamma);

  private:
	DegreeData build_degree(const RootVec &a);
	std::vector<RatVec> lattice_basis(const RootVec &a, DegreeData &d);
	LieVecQ fdiff(int j, const Word &u);
	const std::vector<RatVec> &fmatrix(int j, const RootVec &a);
	LieElement raw_ad_e(int j, const LieElement &x);
	LieElement raw_ad_f(int j, const LieElement &x);
	LieElement raw_bracket(const LieElement &x, const LieElement &y);
	LieElement basis_bracket(const BasisId &a, const BasisId &b);
	LieElement unfold(const BasisId &a, const LieElement &y);
	LieElement unfold_word(const Word &u, bool negative, const LieElement &y);
	void band_check(LieElement &x);
	void require_integral(const LieElement &x, const char *what) const;

	GCM A_;
	int N_;
	Scalars S_;
	FreeLie fl_;
	std::recursive_mutex mu_;
	std::map<RootVec, std::unique_ptr<DegreeData>> deg_;
	std::map<std::pair<RootVec, RootVec>, std::vector<std::vector<RatVec>>> struct_;
	std::map<std::pair<int, RootVec>, std::vector<RatVec>> fmat_;
	std::map<std::pair<int, Word>, LieVecQ> fdiff_;
	std::map<std::pair<BasisId, BasisId>, LieElement> mixed_;
};

std::vector<RootVec> degrees_of_height(int rank, int n);

// dim of the degree-n component of the Serre ideal, n = 1..max
std::vector<Int> serre_ideal_dims(const GCM &A, int max_total_degree);

struct GKKernel
{
	int dim = 0;
	std::vector<std::vector<uint64_t>> basis;  // coordinates over the degree basis
};
GKKernel gk_degree_kernel(BandContext &ctx, const RootVec &delta);

struct LemmaWitness
{
	long m = 0, n = 0;
	uint32_t p = 0;
	bool swapped = false;  // indices exchanged so that the second entry is >= 3
	int branch = 0;
	int i = 0;             // simple index of f_i, original labelling
	RootVec delta;         // original labelling
	RootVec gamma;         // root whose vector e appears in [f_i, x]
	Int coefficient = 0;   // [f_i, x] = coefficient * e_gamma
	uint32_t coefficient_mod_p = 0;
	bool delta_imaginary = false;
	bool nonzero = false;
};
LemmaWitness lemma44_witness(long m, long n, uint32_t p);

} // namespace kmforge
