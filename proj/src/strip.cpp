#include "kmforge/strip.hpp"

#include "kmforge/roots.hpp"

#include <deque>
#include <set>

namespace kmforge {

StripCtx::StripCtx(const GCM &A, int i, int j, uint32_t q) : A_(A), i_(i), j_(j), q_(q)
{
	if (i < 0 || j < 0 || i >= A.rank() || j >= A.rank() || i == j)
		throw Error("InvalidInput", "the strip needs two distinct indices");
	if (!is_prime(q))
		throw Error("InvalidInput", "q must be prime");
	if (-A.at(i, j) < (long)q)
		throw Error("HypothesisViolated", "|a_ij| = " + std::to_string(-A.at(i, j)) + " < q = " + std::to_string(q));
	int Q = (int)q;
	for (int m = 0; m <= Q; ++m)
		deg_.push_back({m, 0});
	fidx_.assign(Q + 1, std::vector<int>(Q + 1, -1));
	for (int s = 0; s <= Q; ++s)
		for (int a = s; a >= 0; --a)
		{
			int b = s - a;
			fidx_[a][b] = (int)deg_.size();
			fab_.push_back({a, b});
			deg_.push_back({s, 1});
		}
	dim_ = (int)deg_.size();
	table_.assign(dim_, std::vector<std::vector<std::pair<int, uint32_t>>>(dim_));
	for (int s = 0; s < dim_; ++s)
		for (int t = 0; t < dim_; ++t)
		{
			auto [ms, ns] = deg_[s];
			auto [mt, nt] = deg_[t];
			if (ns + nt > 1 || ms + mt > Q)
				continue;
			uint32_t c = 0;
			int slot = -1;
			if (ns == 0 && nt == 0)
			{
				c = binom(ms + mt, ms);
				slot = E(ms + mt);
			}
			else if (ns == 0)
			{
				// E_c F_{a,b} = binom(c+a, a) F_{c+a,b}
				auto [a, b] = fab_[t - (Q + 1)];
				c = binom(ms + a, a);
				slot = F(ms + a, b);
			}
			else
			{
				// F_{a,b} E_c = binom(b+c, b) F_{a,b+c}
				auto [a, b] = fab_[s - (Q + 1)];
				c = binom(b + mt, b);
				slot = F(a, b + mt);
			}
			if (c)
				table_[s][t].push_back({slot, c});
		}
}

uint32_t StripCtx::binom(int n, int k) const { return mod_p(Rat(kmforge::binomial(n, k)), q_); }

int StripCtx::F(int a, int b) const
{
	if (a < 0 || b < 0 || a + b > (int)q_)
		throw Error("InvalidInput", "F index outside the strip");
	return fidx_[a][b];
}

StripElt StripCtx::one() const { return basis(E(0)); }

StripElt StripCtx::basis(int slot, uint32_t c) const
{
	StripElt u = zero();
	u[slot] = c % q_;
	return u;
}

StripElt StripCtx::add(const StripElt &a, const StripElt &b) const
{
	StripElt c(dim_);
	for (int k = 0; k < dim_; ++k)
		c[k] = (a[k] + b[k]) % q_;
	return c;
}

StripElt StripCtx::scale(uint32_t c, const StripElt &a) const
{
	StripElt r(dim_);
	for (int k = 0; k < dim_; ++k)
		r[k] = (uint32_t)((uint64_t)c * a[k] % q_);
	return r;
}

StripElt StripCtx::mul(const StripElt &a, const StripElt &b) const
{
	std::vector<uint64_t> acc(dim_, 0);
	for (int s = 0; s < dim_; ++s)
	{
		if (!a[s])
			continue;
		for (int t = 0; t < dim_; ++t)
		{
			if (!b[t])
				continue;
			uint64_t ab = (uint64_t)a[s] * b[t] % q_;
			for (auto &[k, v] : table_[s][t])
				acc[k] = (acc[k] + ab * v) % q_;
		}
	}
	return StripElt(acc.begin(), acc.end());
}

StripElt StripCtx::inverse(const StripElt &g) const
{
	if (g[0] != 1)
		throw Error("InvalidInput", "only elements with constant term 1 are inverted");
	StripElt w = g;
	w[0] = 0;
	w = scale(q_ - 1, w);
	StripElt acc = one(), pw = one();
	for (int k = 0; k <= (int)q_ + 1; ++k)
	{
		pw = mul(pw, w);
		acc = add(acc, pw);
	}
	return acc;
}

StripElt StripCtx::commutator(const StripElt &a, const StripElt &b) const
{
	return mul(mul(a, b), mul(inverse(a), inverse(b)));
}

StripElt StripCtx::x(int s) const
{
	StripElt u = zero();
	for (int a = s; a >= 0; --a)
	{
		int b = s - a;
		u[F(a, b)] = (b % 2) ? q_ - 1 : 1;
	}
	return u;
}

StripElt StripCtx::glambda(const StripCoords &c) const
{
	if (c.mu.size() != q_ + 1)
		throw Error("InvalidInput", "strip coordinates need q+2 entries");
	StripElt e = zero();
	uint64_t pw = 1;
	for (int m = 0; m <= (int)q_; ++m)
	{
		e[E(m)] = (uint32_t)pw;
		pw = pw * c.lambda % q_;
	}
	StripElt f = one();
	for (int s = 0; s <= (int)q_; ++s)
		f = add(f, scale(c.mu[s] % q_, x(s)));
	return mul(e, f);
}

StripCoords StripCtx::normal_form(const StripElt &g) const
{
	StripCoords c;
	c.lambda = g[E(1)];
	c.mu.assign(q_ + 1, 0);
	StripCoords e;
	e.lambda = (q_ - c.lambda) % q_;
	e.mu.assign(q_ + 1, 0);
	StripElt rest = mul(glambda(e), g);
	for (int s = 0; s <= (int)q_; ++s)
		c.mu[s] = rest[F(s, 0)];
	if (glambda(c) != g)
		throw Error("NotGroupLike", "strip element is not of the form g_lambda");
	return c;
}

std::vector<std::vector<uint32_t>> StripCtx::coproduct(const StripElt &u) const
{
	int Q = (int)q_;
	std::vector<std::vector<uint32_t>> T(dim_, std::vector<uint32_t>(dim_, 0));
	auto put = [&](int s, int t, uint64_t c) { T[s][t] = (uint32_t)((T[s][t] + c) % q_); };
	for (int m = 0; m <= Q; ++m)
		if (u[E(m)])
			for (int a = 0; a <= m; ++a)
				put(E(a), E(m - a), u[E(m)]);
	for (int k = Q + 1; k < dim_; ++k)
	{
		if (!u[k])
			continue;
		auto [a, b] = fab_[k - (Q + 1)];
		for (int a1 = 0; a1 <= a; ++a1)
			for (int b1 = 0; b1 <= b; ++b1)
			{
				int a2 = a - a1, b2 = b - b1;
				put(F(a1, b1), E(a2 + b2), (uint64_t)u[k] * binom(a2 + b2, a2));
				put(E(a1 + b1), F(a2, b2), (uint64_t)u[k] * binom(a1 + b1, a1));
			}
	}
	return T;
}

bool StripCtx::is_grouplike(const StripElt &g) const
{
	if (g[0] != 1)
		return false;
	auto T = coproduct(g);
	for (int s = 0; s < dim_; ++s)
		for (int t = 0; t < dim_; ++t)
		{
			if (deg_[s].second + deg_[t].second > 1 || deg_[s].first + deg_[t].first > (int)q_)
				continue;
			if (T[s][t] != (uint64_t)g[s] * g[t] % q_)
				return false;
		}
	return true;
}

StripCoords StripCtx::commutator_coords(const StripCoords &g, const StripCoords &h) const
{
	return normal_form(commutator(glambda(g), glambda(h)));
}

std::vector<StripCoords> StripCtx::all_coords() const
{
	std::vector<StripCoords> out;
	StripCoords c;
	c.mu.assign(q_ + 1, 0);
	for (;;)
	{
		out.push_back(c);
		size_t k = 0;
		for (; k < c.mu.size(); ++k)
		{
			if (++c.mu[k] < q_)
				break;
			c.mu[k] = 0;
		}
		if (k < c.mu.size())
			continue;
		if (++c.lambda == q_)
			break;
	}
	return out;
}

C1CqReport check_c1_cq(const StripCtx &S)
{
	C1CqReport R;
	uint32_t q = S.q();
	auto all = S.all_coords();
	for (auto &g : all)
		for (auto &h : all)
		{
			StripCoords c = S.commutator_coords(g, h);
			++R.pairs;
			if (c.mu[1] != c.mu[q])
				++R.violations;
			uint64_t f = ((uint64_t)g.lambda * h.mu[0] + (uint64_t)(q - h.lambda) * g.mu[0]) % q;
			if (c.mu[1] != f)
				++R.formula_violations;
		}
	return R;
}

using CoordSet = std::set<StripCoords>;

static CoordSet closure(const StripCtx &S, const std::vector<StripCoords> &gens)
{
	StripCoords e;
	e.mu.assign(S.q() + 1, 0);
	CoordSet H{e};
	std::deque<StripCoords> queue{e};
	std::vector<StripElt> G;
	for (auto &g : gens)
		G.push_back(S.glambda(g));
	while (!queue.empty())
	{
		StripCoords x = queue.front();
		queue.pop_front();
		StripElt gx = S.glambda(x);
		for (auto &g : G)
		{
			StripCoords y = S.normal_form(S.mul(gx, g));
			if (H.insert(y).second)
				queue.push_back(y);
		}
	}
	return H;
}

NondensityReport nondensity_witness(const GCM &A, uint32_t q, int i, int j)
{
	NondensityReport R;
	R.q = q;
	R.i = i;
	R.j = j;
	StripCtx S(A, i, j, q);
	auto all = S.all_coords();
	R.ambient_order = all.size();
	std::set<StripCoords> comms;
	for (auto &g : all)
		for (auto &h : all)
			comms.insert(S.commutator_coords(g, h));
	CoordSet D = closure(S, std::vector<StripCoords>(comms.begin(), comms.end()));
	R.derived_order = D.size();
	R.witness.mu.assign(q + 1, 0);
	R.witness.mu[1] = 1;
	R.part1 = !D.count(R.witness);
	R.derived_linked = true;
	for (auto &d : D)
		if ((d.mu[1] == 0) != (d.mu[q] == 0))
			R.derived_linked = false;

	long aij = -A.at(i, j), aji = -A.at(j, i);
	if (aij < (long)q + 1)
		R.part2_refusal = "|a_ij| = " + std::to_string(aij) + " < q+1";
	else if (aji < 2)
		R.part2_refusal = "|a_ji| = " + std::to_string(aji) + " < 2";
	if (!R.part2_refusal.empty())
		return R;
	R.part2_attempted = true;
	GCM B = A.principal({i, j});
	RootTable t = enumerate_roots(B, (int)q + 1);
	R.roots_confirmed = true;
	for (int m = 0; m <= (int)q; ++m)
		for (int n = 0; n <= 1; ++n)
		{
			if (m + n < 2)
				continue;
			if (t.is_real({m, n}))
				R.roots_confirmed = false;
		}
	StripCoords ei, ej;
	ei.lambda = 1;
	ei.mu.assign(q + 1, 0);
	ej.mu.assign(q + 1, 0);
	ej.mu[0] = 1;
	CoordSet Up = closure(S, {ei, ej});
	R.uplus_image_order = Up.size();
	R.part2 = R.roots_confirmed && !Up.count(R.witness);
	return R;
}

} // namespace kmforge
