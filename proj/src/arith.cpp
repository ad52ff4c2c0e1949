#include "kmforge/arith.hpp"

#include <algorithm>

namespace kmforge {

Scalars Scalars::prime(uint32_t p)
{
	if (!kmforge::is_prime(p))
		throw Error("InvalidInput", "field characteristic " + std::to_string(p) + " is not prime");
	return {ScalarKind::Prime, p};
}

Rat Scalars::norm(const Rat &x) const
{
	switch (kind)
	{
	case ScalarKind::Rational:
		return x;
	case ScalarKind::Integer:
		if (x.get_den() != 1)
			throw Error("NonIntegral", "coefficient " + x.get_str() + " is not an integer");
		return x;
	case ScalarKind::Prime:
		return Rat(mod_p(x, p));
	}
	return x;
}

std::string Scalars::name() const
{
	switch (kind)
	{
	case ScalarKind::Rational:
		return "Q";
	case ScalarKind::Integer:
		return "Z";
	case ScalarKind::Prime:
		return "F" + std::to_string(p);
	}
	return "?";
}

bool is_prime(uint64_t n)
{
	if (n < 2)
		return false;
	for (uint64_t d = 2; d * d <= n; ++d)
		if (n % d == 0)
			return false;
	return true;
}

Int binomial(long n, long k)
{
	if (k < 0 || n < 0 || k > n)
		return 0;
	Int r;
	mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
	return r;
}

Int factorial(long n)
{
	Int r;
	mpz_fac_ui(r.get_mpz_t(), (unsigned long)n);
	return r;
}

int mobius(long n)
{
	int r = 1;
	for (long d = 2; d * d <= n; ++d)
	{
		if (n % d == 0)
		{
			n /= d;
			if (n % d == 0)
				return 0;
			r = -r;
		}
	}
	if (n > 1)
		r = -r;
	return r;
}

long gcd_l(long a, long b)
{
	a = a < 0 ? -a : a;
	b = b < 0 ? -b : b;
	while (b)
	{
		long t = a % b;
		a = b;
		b = t;
	}
	return a;
}

long lcm_l(long a, long b) { return a / gcd_l(a, b) * b; }

Rat make_rat(const Int &n, const Int &d)
{
	if (d == 0)
		throw Error("DivisionByZero", "zero denominator");
	Rat r(n, d);
	r.canonicalize();
	return r;
}

Int rat_to_int(const Rat &x, const char *context)
{
	if (x.get_den() != 1)
		throw Error("NonIntegral", std::string(context) + ": " + x.get_str());
	return x.get_num();
}

uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t m)
{
	unsigned __int128 r = 1, x = b % m;
	while (e)
	{
		if (e & 1)
			r = r * x % m;
		x = x * x % m;
		e >>= 1;
	}
	return (uint64_t)r;
}

uint64_t inv_mod(uint64_t a, uint64_t m)
{
	a %= m;
	if (a == 0)
		throw Error("DivisionByZero", "no inverse of 0 mod " + std::to_string(m));
	return pow_mod(a, m - 2, m);
}

uint32_t mod_p(const Rat &x, uint32_t p)
{
	Int num = x.get_num() % p;
	if (num < 0)
		num += p;
	Int den = x.get_den() % p;
	if (den == 0)
		throw Error("DivisionByZero", "denominator of " + x.get_str() + " vanishes mod " + std::to_string(p));
	uint64_t n = num.get_ui(), d = den.get_ui();
	return (uint32_t)(n * inv_mod(d, p) % p);
}

bool Echelon::insert(RatVec v)
{
	v = reduce(std::move(v));
	int c = 0;
	while (c < n_ && v[c] == 0)
		++c;
	if (c == n_)
		return false;
	Rat inv = 1 / v[c];
	for (int k = c; k < n_; ++k)
		v[k] *= inv;
	for (auto &r : rows_)
	{
		if (r[c] == 0)
			continue;
		Rat f = r[c];
		for (int k = c; k < n_; ++k)
			if (v[k] != 0)
				r[k] -= f * v[k];
	}
	row_of_col_[c] = (int)rows_.size();
	rows_.push_back(std::move(v));
	pivots_.push_back(c);
	return true;
}

RatVec Echelon::reduce(RatVec v) const
{
	for (size_t i = 0; i < rows_.size(); ++i)
	{
		int c = pivots_[i];
		if (v[c] == 0)
			continue;
		Rat f = v[c];
		const RatVec &r = rows_[i];
		for (int k = c; k < n_; ++k)
			if (r[k] != 0)
				v[k] -= f * r[k];
	}
	return v;
}

bool Echelon::contains(const RatVec &v) const
{
	RatVec r = reduce(v);
	for (auto &x : r)
		if (x != 0)
			return false;
	return true;
}

std::vector<int> Echelon::free_columns() const
{
	std::vector<int> out;
	for (int c = 0; c < n_; ++c)
		if (row_of_col_[c] < 0)
			out.push_back(c);
	return out;
}

void ZLattice::insert(IntVec v)
{
	int c = 0;
	for (;;)
	{
		while (c < n_ && v[c] == 0)
			++c;
		if (c == n_)
			return;
		if (!at_[c])
		{
			if (v[c] < 0)
				for (auto &x : v)
					x = -x;
			at_[c] = std::move(v);
			return;
		}
		IntVec &r = *at_[c];
		Int a = r[c], b = v[c], g, s, t;
		mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
		Int ag = a / g, bg = b / g;
		IntVec nr(n_), nv(n_);
		for (int k = 0; k < n_; ++k)
		{
			nr[k] = s * r[k] + t * v[k];
			nv[k] = bg * r[k] - ag * v[k];
		}
		if (nr[c] < 0)
			for (auto &x : nr)
				x = -x;
		r = std::move(nr);
		v = std::move(nv);
		++c;
	}
}

int ZLattice::rank() const
{
	int r = 0;
	for (auto &x : at_)
		r += x.has_value();
	return r;
}

std::vector<IntVec> ZLattice::basis() const
{
	std::vector<IntVec> rows;
	std::vector<int> piv;
	for (int c = 0; c < n_; ++c)
		if (at_[c])
		{
			rows.push_back(*at_[c]);
			piv.push_back(c);
		}
	for (size_t i = 0; i < rows.size(); ++i)
		for (size_t j = 0; j < i; ++j)
		{
			int c = piv[i];
			Int q;
			mpz_fdiv_q(q.get_mpz_t(), rows[j][c].get_mpz_t(), rows[i][c].get_mpz_t());
			if (q != 0)
				for (int k = 0; k < n_; ++k)
					rows[j][k] -= q * rows[i][k];
		}
	return rows;
}

std::vector<RatVec> rational_lattice_basis(const std::vector<RatVec> &rows, int ncols)
{
	Int den = 1;
	for (auto &r : rows)
		for (auto &x : r)
			if (x != 0)
				mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
	ZLattice L(ncols);
	for (auto &r : rows)
	{
		IntVec v(ncols);
		for (int k = 0; k < ncols; ++k)
		{
			Rat s = r[k] * den;
			v[k] = s.get_num();
		}
		L.insert(std::move(v));
	}
	std::vector<RatVec> out;
	for (auto &b : L.basis())
	{
		RatVec v(ncols);
		for (int k = 0; k < ncols; ++k)
		{
			v[k] = Rat(b[k], den);
			v[k].canonicalize();
		}
		out.push_back(std::move(v));
	}
	return out;
}

std::vector<RatVec> invert(const std::vector<RatVec> &m)
{
	int n = (int)m.size();
	std::vector<RatVec> a(n, RatVec(2 * n));
	for (int i = 0; i < n; ++i)
	{
		if ((int)m[i].size() != n)
			throw Error("Internal", "invert: matrix not square");
		for (int j = 0; j < n; ++j)
			a[i][j] = m[i][j];
		a[i][n + i] = 1;
	}
	for (int c = 0; c < n; ++c)
	{
		int r = c;
		while (r < n && a[r][c] == 0)
			++r;
		if (r == n)
			throw Error("Internal", "invert: singular matrix");
		std::swap(a[r], a[c]);
		Rat inv = 1 / a[c][c];
		for (auto &x : a[c])
			x *= inv;
		for (int i = 0; i < n; ++i)
			if (i != c && a[i][c] != 0)
			{
				Rat f = a[i][c];
				for (int k = 0; k < 2 * n; ++k)
					if (a[c][k] != 0)
						a[i][k] -= f * a[c][k];
			}
	}
	std::vector<RatVec> out(n, RatVec(n));
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			out[i][j] = a[i][n + j];
	return out;
}

RatBasis::RatBasis(std::vector<RatVec> rows) : rows_(std::move(rows))
{
	if (!rows_.empty())
		inv_ = invert(rows_);
}

RatVec RatBasis::coords(const RatVec &v) const
{
	int n = dim();
	RatVec c(n);
	for (int k = 0; k < n; ++k)
	{
		if (v[k] == 0)
			continue;
		for (int j = 0; j < n; ++j)
			if (inv_[k][j] != 0)
				c[j] += v[k] * inv_[k][j];
	}
	return c;
}

RatVec RatBasis::combine(const RatVec &c) const
{
	int n = dim();
	RatVec v(n);
	for (int j = 0; j < n; ++j)
	{
		if (c[j] == 0)
			continue;
		for (int k = 0; k < n; ++k)
			if (rows_[j][k] != 0)
				v[k] += c[j] * rows_[j][k];
	}
	return v;
}

int rank_mod_p(std::vector<std::vector<uint64_t>> m, uint64_t p)
{
	int rank = 0;
	int ncols = m.empty() ? 0 : (int)m[0].size();
	for (int c = 0; c < ncols && rank < (int)m.size(); ++c)
	{
		int r = rank;
		while (r < (int)m.size() && m[r][c] % p == 0)
			++r;
		if (r == (int)m.size())
			continue;
		std::swap(m[r], m[rank]);
		uint64_t inv = inv_mod(m[rank][c], p);
		for (auto &x : m[rank])
			x = x * inv % p;
		for (int i = 0; i < (int)m.size(); ++i)
			if (i != rank && m[i][c] % p)
			{
				uint64_t f = m[i][c] % p;
				for (int k = 0; k < ncols; ++k)
					m[i][k] = (m[i][k] + (p - f) * m[rank][k]) % p;
			}
		++rank;
	}
	return rank;
}

std::vector<std::vector<uint64_t>> kernel_mod_p(const std::vector<std::vector<uint64_t>> &rows, int nvars,
                                                uint64_t p)
{
	std::vector<std::vector<uint64_t>> m = rows;
	for (auto &r : m)
		for (auto &x : r)
			x %= p;
	std::vector<int> pivcol;
	int rank = 0;
	for (int c = 0; c < nvars && rank < (int)m.size(); ++c)
	{
		int r = rank;
		while (r < (int)m.size() && m[r][c] == 0)
			++r;
		if (r == (int)m.size())
			continue;
		std::swap(m[r], m[rank]);
		uint64_t inv = inv_mod(m[rank][c], p);
		for (auto &x : m[rank])
			x = x * inv % p;
		for (int i = 0; i < (int)m.size(); ++i)
			if (i != rank && m[i][c])
			{
				uint64_t f = m[i][c];
				for (int k = 0; k < nvars; ++k)
					m[i][k] = (m[i][k] + (p - f) * m[rank][k]) % p;
			}
		pivcol.push_back(c);
		++rank;
	}
	std::vector<bool> is_piv(nvars, false);
	for (int c : pivcol)
		is_piv[c] = true;
	std::vector<std::vector<uint64_t>> out;
	for (int f = 0; f < nvars; ++f)
	{
		if (is_piv[f])
			continue;
		std::vector<uint64_t> x(nvars, 0);
		x[f] = 1;
		for (int i = 0; i < rank; ++i)
			x[pivcol[i]] = (p - m[i][f]) % p;
		out.push_back(std::move(x));
	}
	return out;
}

std::string int_to_string(const Int &x) { return x.get_str(); }

} // namespace kmforge
