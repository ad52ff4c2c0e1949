#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmforge {

using Int = mpz_class;
using Rat = mpq_class;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

struct Error : std::runtime_error
{
	std::string code;
	Error(std::string c, const std::string &what)
	    : std::runtime_error(c + ": " + what), code(std::move(c))
	{}
};

enum class ScalarKind
{
	Integer,
	Rational,
	Prime
};

// Coefficient domain shared by the Lie, enveloping and group layers.
// Values are stored as rationals; for Integer they must be integral and for
// Prime they are kept as canonical residues 0..p-1.
struct Scalars
{
	ScalarKind kind = ScalarKind::Rational;
	uint32_t p = 0;

	static Scalars integers() { return {ScalarKind::Integer, 0}; }
	static Scalars rationals() { return {ScalarKind::Rational, 0}; }
	static Scalars prime(uint32_t p);

	bool is_prime() const { return kind == ScalarKind::Prime; }
	Rat norm(const Rat &x) const;
	bool is_zero(const Rat &x) const { return norm(x) == 0; }
	std::string name() const;
};

bool is_prime(uint64_t n);
Int binomial(long n, long k);
Int factorial(long n);
int mobius(long n);
long gcd_l(long a, long b);
long lcm_l(long a, long b);
// n/d in lowest terms
Rat make_rat(const Int &n, const Int &d);
Int rat_to_int(const Rat &x, const char *context);
uint32_t mod_p(const Rat &x, uint32_t p);
uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m);
uint64_t inv_mod(uint64_t a, uint64_t m);

// Reduced row echelon form built incrementally.
class Echelon
{
  public:
	explicit Echelon(int ncols = 0) : n_(ncols), row_of_col_(ncols, -1) {}
	int ncols() const { return n_; }
	int rank() const { return (int)rows_.size(); }
	bool insert(RatVec v);
	RatVec reduce(RatVec v) const;
	bool contains(const RatVec &v) const;
	const std::vector<RatVec> &rows() const { return rows_; }
	const std::vector<int> &pivots() const { return pivots_; }
	std::vector<int> free_columns() const;
	bool is_pivot(int c) const { return row_of_col_[c] >= 0; }

  private:
	int n_;
	std::vector<RatVec> rows_;
	std::vector<int> pivots_;
	std::vector<int> row_of_col_;
};

// Hermite normal form of the lattice spanned by integer rows.
class ZLattice
{
  public:
	explicit ZLattice(int ncols = 0) : n_(ncols), at_(ncols) {}
	void insert(IntVec v);
	int rank() const;
	// rows in echelon order, positive pivots, entries above pivots reduced
	std::vector<IntVec> basis() const;

  private:
	int n_;
	std::vector<std::optional<IntVec>> at_;
};

// Z-basis of the lattice spanned by rational rows (HNF after clearing
// denominators).
std::vector<RatVec> rational_lattice_basis(const std::vector<RatVec> &rows, int ncols);

// Solve x * B = v for square invertible B (rows of B are basis vectors).
class RatBasis
{
  public:
	RatBasis() = default;
	explicit RatBasis(std::vector<RatVec> rows);
	int dim() const { return (int)rows_.size(); }
	const std::vector<RatVec> &rows() const { return rows_; }
	RatVec coords(const RatVec &v) const;
	RatVec combine(const RatVec &c) const;

  private:
	std::vector<RatVec> rows_;
	std::vector<RatVec> inv_;
};

std::vector<RatVec> invert(const std::vector<RatVec> &m);

// Linear algebra over F_p on small dense matrices.
int rank_mod_p(std::vector<std::vector<uint64_t>> m, uint64_t p);
// basis of {x : M x = 0} where M is given by its rows
std::vector<std::vector<uint64_t>> kernel_mod_p(const std::vector<std::vector<uint64_t>> &rows, int nvars,
                                                uint64_t p);

std::string int_to_string(const Int &x);

} // namespace kmforge
