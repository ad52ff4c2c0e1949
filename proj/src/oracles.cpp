#include "kmforge/oracles.hpp"

#include <set>

namespace kmforge {

Int witt_dim(long r, long n)
{
	if (n < 1)
		throw Error("InvalidInput", "degree must be positive");
	Int total = 0;
	for (long d = 1; d <= n; ++d)
	{
		if (n % d)
			continue;
		int mu = mobius(d);
		if (!mu)
			continue;
		Int pw;
		mpz_ui_pow_ui(pw.get_mpz_t(), (unsigned long)r, (unsigned long)(n / d));
		total += mu * pw;
	}
	return total / n;
}

PetersonTable::PetersonTable(const GCM &A) : A_(A)
{
	auto d = symmetrizer(A);
	if (!d)
		throw Error("NotSymmetrizable", "Peterson recursion needs a symmetrizable matrix");
	d_ = *d;
}

Rat PetersonTable::form(const RootVec &a, const RootVec &b) const { return sym_form(A_, d_, a, b); }

Rat PetersonTable::c(const RootVec &beta)
{
	auto it = c_.find(beta);
	if (it != c_.end())
		return it->second;
	Rat val = 0;
	int g = 0;
	for (int x : beta)
		g = (int)gcd_l(g, x);
	for (int n = 1; n <= g; ++n)
		if (g % n == 0)
		{
			RootVec b = beta;
			for (auto &x : b)
				x /= n;
			val += make_rat(mult(b), n);
		}
	return c_.emplace(beta, val).first->second;
}

long PetersonTable::mult(const RootVec &alpha)
{
	if (!is_positive(alpha))
		return 0;
	if (height(alpha) == 1)
		return 1;
	auto it = mult_.find(alpha);
	if (it != mult_.end())
		return it->second;
	int r = A_.rank();
	long v = 0;
	// Weyl invariance moves alpha into the region where every <alpha, a_i^vee> <= 0
	int pick = -1;
	for (int i = 0; i < r && pick < 0; ++i)
	{
		long s = 0;
		for (int j = 0; j < r; ++j)
			s += (long)alpha[j] * A_.at(i, j);
		if (s > 0)
			pick = i;
	}
	if (pick >= 0)
		v = mult(reflect_root(A_, pick, alpha));
	else
	{
		// (beta | beta - 2 rho) c_beta = sum over beta' + beta'' = beta of (beta'|beta'') c_beta' c_beta''
		Rat rho_beta = 0;
		for (int i = 0; i < r; ++i)
			rho_beta += Rat((long)alpha[i] * d_[i]);
		Rat lhs = form(alpha, alpha) - 2 * rho_beta;
		if (lhs >= 0)
			throw Error("Internal", "Peterson recursion degenerates at " + root_str(alpha));
		Rat sum = 0;
		RootVec b1(r, 0);
		for (;;)
		{
			int k = 0;
			while (k < r && b1[k] == alpha[k])
				b1[k++] = 0;
			if (k == r)
				break;
			b1[k]++;
			if (b1 == alpha)
				break;
			Rat c1 = c(b1);
			if (c1 == 0)
				continue;
			Rat c2 = c(sub(alpha, b1));
			if (c2 != 0)
				sum += form(b1, sub(alpha, b1)) * c1 * c2;
		}
		Rat m = sum / lhs;
		int g = 0;
		for (int x : alpha)
			g = (int)gcd_l(g, x);
		for (int n = 2; n <= g; ++n)
			if (g % n == 0)
			{
				RootVec b = alpha;
				for (auto &x : b)
					x /= n;
				m -= make_rat(mult(b), n);
			}
		if (m.get_den() != 1 || m < 0)
			throw Error("Internal", "non-integral multiplicity at " + root_str(alpha));
		v = m.get_num().get_si();
	}
	mult_[alpha] = v;
	return v;
}

long peterson_mult(const GCM &A, const RootVec &alpha)
{
	PetersonTable t(A);
	return t.mult(alpha);
}

CensusReport grouplike_census(TruncCtx &ctx, size_t cap)
{
	if (!ctx.scalars().is_prime())
		throw Error("InvalidInput", "the census needs a finite field");
	uint32_t p = ctx.scalars().p;
	auto monos = ctx.all_monomials();
	CensusReport R;
	long double total = 1;
	for (size_t k = 0; k < monos.size(); ++k)
		total *= p;
	if (total > (long double)cap)
		throw Error("CapExceeded", "census would scan more than " + std::to_string(cap) + " candidates");
	R.expected = 1;
	for (int k = 0; k < ctx.num_basis(); ++k)
		R.expected *= p;
	std::vector<uint32_t> digits(monos.size(), 0);
	std::set<std::vector<Rat>> coords;
	bool bij = true;
	for (;;)
	{
		EnvElement u = ctx.one();
		for (size_t k = 0; k < monos.size(); ++k)
			if (digits[k])
				u.terms[monos[k]] = digits[k];
		++R.candidates;
		if (ctx.is_grouplike(u))
		{
			++R.grouplike;
			auto c = ctx.normal_form(u);
			if (!coords.insert(c).second || !(ctx.from_coords(c) == u))
				bij = false;
			R.elements.push_back(u);
		}
		size_t k = 0;
		while (k < digits.size() && ++digits[k] == p)
			digits[k++] = 0;
		if (k == digits.size())
			break;
	}
	R.bijective = bij && R.grouplike == R.expected;
	return R;
}

} // namespace kmforge
