#include "kmforge/groupquot.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <optional>
#include <set>

namespace kmforge {

size_t GEltHash::operator()(const GElt &g) const
{
	uint64_t h = 1469598103934665603ull;
	for (uint32_t x : g)
	{
		h ^= x;
		h *= 1099511628211ull;
	}
	return (size_t)h;
}

size_t default_order_cap()
{
	if (const char *s = std::getenv("KMFORGE_ORDER_CAP"))
	{
		char *end = nullptr;
		unsigned long long v = std::strtoull(s, &end, 10);
		if (end && *end == 0 && v > 0)
			return (size_t)v;
	}
	return 1000000;
}

// coefficients c with sum c_k rows[k] = target over F_p
static std::optional<std::vector<uint32_t>> solve_mod_p(const std::vector<std::vector<uint32_t>> &rows,
                                                        const std::vector<uint32_t> &target, uint32_t p)
{
	int m = (int)rows.size(), n = (int)target.size();
	// augmented system: columns are the rows, unknowns c_k
	std::vector<std::vector<uint64_t>> M(n, std::vector<uint64_t>(m + 1));
	for (int r = 0; r < n; ++r)
	{
		for (int k = 0; k < m; ++k)
			M[r][k] = rows[k][r];
		M[r][m] = target[r];
	}
	std::vector<int> pivcol;
	int rank = 0;
	for (int c = 0; c < m && rank < n; ++c)
	{
		int r = rank;
		while (r < n && M[r][c] == 0)
			++r;
		if (r == n)
			continue;
		std::swap(M[r], M[rank]);
		uint64_t inv = inv_mod(M[rank][c], p);
		for (auto &x : M[rank])
			x = x * inv % p;
		for (int s = 0; s < n; ++s)
			if (s != rank && M[s][c])
			{
				uint64_t f = M[s][c];
				for (int k = 0; k <= m; ++k)
					M[s][k] = (M[s][k] + (p - f) * M[rank][k]) % p;
			}
		pivcol.push_back(c);
		++rank;
	}
	for (int r = rank; r < n; ++r)
		if (M[r][m])
			return std::nullopt;
	std::vector<uint32_t> sol(m, 0);
	for (int r = 0; r < rank; ++r)
		sol[pivcol[r]] = (uint32_t)M[r][m];
	return sol;
}

static int rank_u32(const std::vector<std::vector<uint32_t>> &rows, uint32_t p)
{
	std::vector<std::vector<uint64_t>> m;
	for (auto &r : rows)
		m.emplace_back(r.begin(), r.end());
	return rank_mod_p(m, p);
}

QuotCtx::QuotCtx(GCM A, uint32_t p, int N) : A_(std::move(A)), p_(p), N_(N), cap_(default_order_cap())
{
	if (!is_prime(p))
		throw Error("InvalidInput", std::to_string(p) + " is not prime");
	if (N < 1)
		throw Error("InvalidInput", "height bound must be at least 1");
	env_ = std::make_unique<TruncCtx>(A_, N, Scalars::rationals());
	zband_ = std::make_unique<BandContext>(A_, N, Scalars::integers());
	build_kostant();
}

void QuotCtx::build_kostant()
{
	TruncCtx &U = *env_;
	int r = A_.rank();
	std::vector<RootVec> degs;
	for (int h = 1; h <= N_; ++h)
	{
		auto layer = degrees_of_height(r, h);
		std::sort(layer.begin(), layer.end(), degree_less);
		degs.insert(degs.end(), layer.begin(), layer.end());
	}
	for (auto &a : degs)
	{
		auto ms = U.monomials(a);
		deg_pbw_[a] = {(int)pbw_.size(), (int)(pbw_.size() + ms.size())};
		for (auto &m : ms)
		{
			pbw_index_[m] = (int)pbw_.size();
			pbw_.push_back(m);
		}
	}
	auto to_env_row = [&](const RootVec &a, const RatVec &row) {
		EnvElement u;
		int lo = deg_pbw_[a].first;
		for (size_t k = 0; k < row.size(); ++k)
			if (row[k] != 0)
				u.terms[pbw_[lo + k]] = row[k];
		return u;
	};
	auto pbw_row = [&](const RootVec &a, const EnvElement &u) {
		auto [lo, hi] = deg_pbw_[a];
		RatVec row(hi - lo);
		for (auto &[m, c] : u.terms)
		{
			auto it = pbw_index_.find(m);
			if (it == pbw_index_.end() || it->second < lo || it->second >= hi)
				throw Error("Internal", "product left its degree");
			row[it->second - lo] = c;
		}
		return row;
	};
	std::vector<EnvElement> basis_env;
	for (auto &a : degs)
	{
		auto [lo, hi] = deg_pbw_[a];
		std::vector<RatVec> span;
		for (int i = 0; i < r; ++i)
			for (int s = 1; s <= a[i]; ++s)
			{
				RootVec rest = a;
				rest[i] -= s;
				EnvElement ei = U.mono(Mono{{U.id_of(simple_root(r, i), 0), s}});
				if (height(rest) == 0)
				{
					span.push_back(pbw_row(a, ei));
					continue;
				}
				for (auto &row : kostant_.at(rest).rows())
					span.push_back(pbw_row(a, U.mul(ei, to_env_row(rest, row))));
			}
		auto rows = rational_lattice_basis(span, hi - lo);
		if ((int)rows.size() != hi - lo)
			throw Error("Internal", "divided-power products do not span degree " + root_str(a));
		deg_coord_[a] = (int)coord_deg_.size();
		for (auto &row : rows)
		{
			coord_deg_.push_back(a);
			coord_ht_.push_back(height(a));
			basis_env.push_back(to_env_row(a, row));
		}
		kostant_.emplace(a, RatBasis(rows));
	}
	int n = dim();
	table_.assign(n, {});
	for (int i = 0; i < n; ++i)
	{
		int lim = 0;
		while (lim < n && coord_ht_[i] + coord_ht_[lim] <= N_)
			++lim;
		table_[i].assign(lim, {});
		for (int j = 0; j < lim; ++j)
		{
			EnvElement prod = U.mul(basis_env[i], basis_env[j]);
			RootVec c = add(coord_deg_[i], coord_deg_[j]);
			if (prod.terms.empty())
				continue;
			RatVec x = kostant_.at(c).coords(pbw_row(c, prod));
			int base = deg_coord_[c];
			for (size_t k = 0; k < x.size(); ++k)
			{
				if (x[k].get_den() != 1)
					throw Error("Internal", "Kostant lattice not closed under products");
				uint32_t v = mod_p(x[k], p_);
				if (v)
					table_[i][j].push_back({base + (int)k, v});
			}
		}
	}
}

std::pair<int, int> QuotCtx::height_range(int n) const
{
	int lo = (int)(std::lower_bound(coord_ht_.begin(), coord_ht_.end(), n) - coord_ht_.begin());
	int hi = (int)(std::upper_bound(coord_ht_.begin(), coord_ht_.end(), n) - coord_ht_.begin());
	return {lo, hi};
}

// products of the augmentation parts only
static void nil_mul_into(const std::vector<std::vector<std::vector<std::pair<int, uint32_t>>>> &T, uint32_t p,
                         const GElt &a, const GElt &b, std::vector<uint64_t> &acc)
{
	bool small = p < 65536;
	for (size_t i = 0; i < a.size(); ++i)
	{
		if (!a[i])
			continue;
		const auto &row = T[i];
		for (size_t j = 0; j < row.size(); ++j)
		{
			if (!b[j] || row[j].empty())
				continue;
			uint64_t ab = (uint64_t)a[i] * b[j] % p;
			for (auto &[k, v] : row[j])
			{
				if (small)
					acc[k] += ab * v;
				else
					acc[k] = (acc[k] + ab * v) % p;
			}
		}
		if (small)
			for (auto &x : acc)
				if (x >= (1ull << 62))
					x %= p;
	}
}

GElt QuotCtx::mul(const GElt &a, const GElt &b) const
{
	std::vector<uint64_t> acc(dim());
	for (int k = 0; k < dim(); ++k)
		acc[k] = (uint64_t)a[k] + b[k];
	nil_mul_into(table_, p_, a, b, acc);
	GElt c(dim());
	for (int k = 0; k < dim(); ++k)
		c[k] = (uint32_t)(acc[k] % p_);
	return c;
}

GElt QuotCtx::inv(const GElt &a) const
{
	// (1 + a)^{-1} = sum_k (-a)^k
	GElt w(dim());
	for (int k = 0; k < dim(); ++k)
		w[k] = a[k] ? p_ - a[k] : 0;
	GElt acc = w, pw = w;
	for (int step = 1; step < N_; ++step)
	{
		std::vector<uint64_t> t(dim(), 0);
		nil_mul_into(table_, p_, pw, w, t);
		bool nz = false;
		for (int k = 0; k < dim(); ++k)
		{
			pw[k] = (uint32_t)(t[k] % p_);
			nz |= pw[k] != 0;
			acc[k] = (acc[k] + pw[k]) % p_;
		}
		if (!nz)
			break;
	}
	return acc;
}

GElt QuotCtx::commutator(const GElt &a, const GElt &b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }

GElt QuotCtx::power(const GElt &a, unsigned long n) const
{
	GElt r = identity(), b = a;
	while (n)
	{
		if (n & 1)
			r = mul(r, b);
		n >>= 1;
		if (n)
			b = mul(b, b);
	}
	return r;
}

int QuotCtx::lowest_height(const GElt &a) const
{
	for (int k = 0; k < dim(); ++k)
		if (a[k])
			return coord_ht_[k];
	return N_ + 1;
}

GElt QuotCtx::from_env(const EnvElement &u) const
{
	GElt g(dim(), 0);
	std::map<RootVec, RatVec> rows;
	for (auto &[m, c] : u.terms)
	{
		if (m.empty())
			continue;
		RootVec a = env_->degree(m);
		if (height(a) > N_)
			continue;
		auto [lo, hi] = deg_pbw_.at(a);
		auto &row = rows[a];
		if (row.empty())
			row.assign(hi - lo, 0);
		row[pbw_index_.at(m) - lo] = c;
	}
	for (auto &[a, row] : rows)
	{
		RatVec x = kostant_.at(a).coords(row);
		int base = deg_coord_.at(a);
		for (size_t k = 0; k < x.size(); ++k)
			g[base + k] = mod_p(x[k], p_);
	}
	return g;
}

EnvElement QuotCtx::to_env(const GElt &g) const
{
	EnvElement u = env_->one();
	for (auto &[a, b] : kostant_)
	{
		int base = deg_coord_.at(a);
		RatVec c(b.dim());
		bool nz = false;
		for (int k = 0; k < b.dim(); ++k)
		{
			c[k] = g[base + k];
			nz |= g[base + k] != 0;
		}
		if (!nz)
			continue;
		RatVec row = b.combine(c);
		int lo = deg_pbw_.at(a).first;
		for (size_t k = 0; k < row.size(); ++k)
			if (row[k] != 0)
				u.terms[pbw_[lo + k]] = row[k];
	}
	return u;
}

static EnvElement exp_series(TruncCtx &U, const EnvElement &X, const Rat &lambda)
{
	EnvElement acc = U.one(), t = U.one(), Y = U.scale(lambda, X);
	for (int n = 1; n <= U.N(); ++n)
	{
		t = U.scale(Rat(1, n), U.mul(t, Y));
		if (t.terms.empty())
			break;
		acc = U.add(acc, t);
	}
	return acc;
}

GElt QuotCtx::root_element(const RootVec &alpha, long lambda)
{
	EnvElement X = env_->from_lie(env_->band().real_root_vector(alpha));
	return from_env(exp_series(*env_, X, Rat(lambda)));
}

static LieElement lattice_to_rational(BandContext &Z, BandContext &Q, const RootVec &a, const RatVec &coords)
{
	LieElement x;
	x.pos[a] = Q.coords_of(a, Z.lift(a, coords));
	return x;
}

GElt QuotCtx::lattice_exp(const RootVec &a, int k, long lambda)
{
	if (p_ <= (uint32_t)N_)
		throw Error("CharConstraint", "exponentials of lattice elements need p > N");
	RatVec c(zband_->dim(a));
	c[k] = 1;
	EnvElement X = env_->from_lie(lattice_to_rational(*zband_, env_->band(), a, c));
	return from_env(exp_series(*env_, X, Rat(lambda)));
}

std::vector<uint32_t> QuotCtx::embed_lie(const RootVec &a, const RatVec &lattice_coords)
{
	EnvElement X = env_->from_lie(lattice_to_rational(*zband_, env_->band(), a, lattice_coords));
	GElt g = from_env(X);
	auto [lo, hi] = height_range(height(a));
	return std::vector<uint32_t>(g.begin() + lo, g.begin() + hi);
}

std::vector<GElt> QuotCtx::real_root_generators()
{
	RootTable t = enumerate_roots(env_->band(), N_);
	std::vector<GElt> gens;
	for (auto &a : t.real_roots())
		gens.push_back(root_element(a, 1));
	return gens;
}

std::vector<GElt> QuotCtx::generators()
{
	if (p_ <= (uint32_t)N_)
		return real_root_generators();
	std::vector<GElt> gens;
	for (auto &a : zband_->positive_degrees())
		for (int k = 0; k < zband_->dim(a); ++k)
			gens.push_back(lattice_exp(a, k, 1));
	return gens;
}

Subgroup QuotCtx::closure(const std::vector<GElt> &gens) const
{
	Subgroup H;
	GElt e = identity();
	for (auto &g : gens)
		if (g != e)
			H.gens.push_back(g);
	H.elems.insert(e);
	std::deque<GElt> queue{e};
	while (!queue.empty())
	{
		GElt x = std::move(queue.front());
		queue.pop_front();
		for (auto &g : H.gens)
		{
			GElt y = mul(x, g);
			if (H.elems.insert(y).second)
			{
				if (H.elems.size() > cap_)
					throw Error("OrderCapExceeded", "subgroup order exceeds " + std::to_string(cap_));
				queue.push_back(std::move(y));
			}
		}
	}
	return H;
}

Subgroup QuotCtx::generated(const std::vector<GElt> &cands) const
{
	Subgroup H = closure({});
	for (auto &c : cands)
		if (!H.contains(c))
		{
			auto gens = H.gens;
			gens.push_back(c);
			H = closure(gens);
		}
	return H;
}

Subgroup QuotCtx::normal_closure(std::vector<GElt> gens, const std::vector<GElt> &ambient) const
{
	Subgroup H = generated(gens);
	for (size_t s = 0; s < H.gens.size(); ++s)
		for (auto &g : ambient)
		{
			GElt c = mul(mul(g, H.gens[s]), inv(g));
			if (!H.contains(c))
			{
				auto ng = H.gens;
				ng.push_back(c);
				H = closure(ng);
			}
		}
	return H;
}

Subgroup QuotCtx::commutator_subgroup(const Subgroup &H, const Subgroup &K, const std::vector<GElt> &ambient) const
{
	std::vector<GElt> cands;
	for (auto &h : H.gens)
		for (auto &k : K.gens)
			cands.push_back(commutator(h, k));
	return normal_closure(cands, ambient);
}

const Subgroup &QuotCtx::full()
{
	if (!full_)
		full_ = std::make_unique<Subgroup>(generated(generators()));
	return *full_;
}

GElt QuotCtx::torus_conj(const std::vector<uint32_t> &t, const GElt &g) const
{
	if ((int)t.size() != A_.rank())
		throw Error("InvalidInput", "torus element has the wrong rank");
	for (auto x : t)
		if (x % p_ == 0)
			throw Error("InvalidInput", "torus values must be nonzero");
	GElt r = g;
	for (int k = 0; k < dim(); ++k)
	{
		uint64_t s = 1;
		for (int i = 0; i < A_.rank(); ++i)
			s = s * pow_mod(t[i] % p_, coord_deg_[k][i], p_) % p_;
		r[k] = (uint32_t)(s * g[k] % p_);
	}
	return r;
}

GElt QuotCtx::lowering_conj(int i, long lambda, const GElt &g)
{
	TruncCtx &U = *env_;
	BandContext &Q = U.band();
	RootVec ai = simple_root(A_.rank(), i);
	EnvElement u = to_env(g);
	EnvElement out;
	std::map<int, EnvElement> image;
	for (auto &[m, c] : u.terms)
	{
		EnvElement acc = U.one();
		for (auto &[id, k] : m)
		{
			if (U.basis_degree(id) == ai)
				throw Error("UnsupportedDegree", "the element has a factor in degree " + root_str(ai));
			auto it = image.find(id);
			if (it == image.end())
			{
				LieElement x = Q.basis_element(U.basis_degree(id), U.basis_slot(id)), sum = x, t = x;
				for (int n = 1; !t.is_zero(); ++n)
				{
					t = Q.ad_divided_power(i, -1, 1, t);
					if (t.is_zero())
						break;
					LieElement term = Rat(lambda) * t;
					for (int s = 2; s <= n; ++s)
						term = make_rat(lambda, s) * term;
					sum = sum + term;
				}
				Q.normalize(sum);
				if (!sum.neg.empty() || !sum.cartan.empty())
					throw Error("UnsupportedDegree", "conjugate leaves the positive part");
				it = image.emplace(id, U.from_lie(sum)).first;
			}
			acc = U.mul(acc, U.scale(Rat(1) / Rat(factorial(k)), U.power(it->second, k)));
		}
		out = U.add(out, U.scale(c, acc));
	}
	// integrality of the image in the Kostant coordinates
	std::map<RootVec, RatVec> rows;
	for (auto &[m, c] : out.terms)
	{
		if (m.empty())
			continue;
		RootVec a = U.degree(m);
		auto [lo, hi] = deg_pbw_.at(a);
		auto &row = rows[a];
		if (row.empty())
			row.assign(hi - lo, 0);
		row[pbw_index_.at(m) - lo] = c;
	}
	for (auto &[a, row] : rows)
		for (auto &x : kostant_.at(a).coords(row))
			if (x.get_den() != 1)
				throw Error("NonIntegralDividedPower", "conjugate leaves the Kostant lattice in degree " + root_str(a));
	return from_env(out);
}

std::vector<LcsLevel> lower_central_series(QuotCtx &ctx)
{
	const Subgroup &G = ctx.full();
	std::vector<LcsLevel> out;
	Subgroup gamma = G;
	for (int n = 1; n <= ctx.N(); ++n)
	{
		if (n > 1)
			gamma = ctx.commutator_subgroup(G, gamma, G.gens);
		LcsLevel L;
		L.n = n;
		L.order = gamma.order();
		size_t cu = 0;
		for (auto &g : G.elems)
			if (ctx.lowest_height(g) >= n)
				++cu;
		L.coordinate_order = cu;
		bool inside = true;
		for (auto &g : gamma.elems)
			if (ctx.lowest_height(g) < n)
				inside = false;
		L.equals_coordinate = inside && cu == L.order;
		out.push_back(L);
	}
	return out;
}

bool p_power_lemma(QuotCtx &ctx, const GElt &g, int n)
{
	if (ctx.lowest_height(g) < n)
		throw Error("InvalidInput", "element is not in the height-" + std::to_string(n) + " congruence subgroup");
	GElt h = ctx.power(g, ctx.p());
	long need = std::min<long>((long)n * ctx.p(), ctx.N() + 1);
	return ctx.lowest_height(h) >= need;
}

ZjlReport zjl_check(QuotCtx &ctx)
{
	ZjlReport R;
	int N = ctx.N();
	uint32_t p = ctx.p();
	const Subgroup &G = ctx.full();
	BandContext &Z = ctx.lattice();
	std::vector<Subgroup> D(N + 2), Gam(N + 2);
	D[1] = G;
	Gam[1] = G;
	for (int n = 2; n <= N + 1; ++n)
	{
		Gam[n] = ctx.commutator_subgroup(G, Gam[n - 1], G.gens);
		std::vector<GElt> cands;
		std::set<GElt> powers;
		for (auto &x : D[(n + p - 1) / p].elems)
			powers.insert(ctx.power(x, p));
		cands.assign(powers.begin(), powers.end());
		for (int i = 1; i <= n / 2; ++i)
		{
			Subgroup C = ctx.commutator_subgroup(D[i], D[n - i], G.gens);
			cands.insert(cands.end(), C.gens.begin(), C.gens.end());
		}
		D[n] = ctx.generated(cands);
	}
	for (int n = 1; n <= N; ++n)
	{
		R.dimension_orders.push_back(D[n].order());
		R.lcs_orders.push_back(Gam[n].order());
		size_t cu = 0;
		for (auto &g : G.elems)
			if (ctx.lowest_height(g) >= n)
				++cu;
		R.coordinate_orders.push_back(cu);
		bool gin = true, din = true;
		for (auto &g : Gam[n].elems)
			if (!D[n].contains(g))
				gin = false;
		for (auto &g : D[n].elems)
			if (ctx.lowest_height(g) < n)
				din = false;
		if (!gin || !din)
		{
			R.chain_ok = false;
			if (R.failure.empty())
				R.failure = "chain fails at n=" + std::to_string(n);
		}
		if (!(gin && D[n].order() == Gam[n].order()))
		{
			R.d_equals_gamma = false;
			if (R.failure.empty())
				R.failure = "D_n differs from gamma_n at n=" + std::to_string(n);
		}
	}
	if (!R.chain_ok)
		return R;

	// graded pieces: lattice image V_n and leading parts W_n of D_n
	auto slice = [&](const GElt &g, int n) {
		auto [lo, hi] = ctx.height_range(n);
		return std::vector<uint32_t>(g.begin() + lo, g.begin() + hi);
	};
	std::map<RootVec, std::vector<std::vector<uint32_t>>> emb;
	std::vector<std::vector<std::vector<uint32_t>>> V(N + 1), W(N + 1);
	std::vector<std::vector<RootVec>> degs(N + 1);
	for (auto &a : Z.positive_degrees())
	{
		int h = height(a);
		degs[h].push_back(a);
		for (int k = 0; k < Z.dim(a); ++k)
		{
			RatVec c(Z.dim(a));
			c[k] = 1;
			auto v = ctx.embed_lie(a, c);
			emb[a].push_back(v);
			V[h].push_back(v);
		}
	}
	for (int n = 1; n <= N; ++n)
	{
		for (auto &g : D[n].gens)
			W[n].push_back(slice(g, n));
		int rv = rank_u32(V[n], p), rw = rank_u32(W[n], p);
		auto both = V[n];
		both.insert(both.end(), W[n].begin(), W[n].end());
		int rb = rank_u32(both, p);
		size_t quotient = D[n].order() / D[n + 1].order();
		size_t expect = 1;
		for (int k = 0; k < rv; ++k)
			expect *= p;
		if (rv != (int)V[n].size() || rv != rw || rb != rv || quotient != expect)
		{
			R.leading_ok = false;
			if (R.failure.empty())
				R.failure = "graded piece " + std::to_string(n) + " does not match the lattice";
		}
	}
	if (!R.leading_ok)
		return R;

	// representatives in D_n for lattice basis elements
	auto rep = [&](const RootVec &a, int k) {
		int n = height(a);
		auto c = solve_mod_p(W[n], emb[a][k], p);
		GElt g = ctx.identity();
		for (size_t s = 0; s < c->size(); ++s)
			if ((*c)[s])
				g = ctx.mul(g, ctx.power(D[n].gens[s], (*c)[s]));
		return g;
	};
	for (int i = 1; i <= N; ++i)
		for (int j = i; i + j <= N; ++j)
			for (auto &a : degs[i])
				for (auto &b : degs[j])
				{
					RootVec c = add(a, b);
					for (int k = 0; k < Z.dim(a); ++k)
						for (int l = 0; l < Z.dim(b); ++l)
						{
							GElt comm = ctx.commutator(rep(a, k), rep(b, l));
							std::vector<uint32_t> want(slice(comm, i + j).size(), 0);
							if (Z.dim(c) > 0)
							{
								LieElement br = Z.bracket(Z.basis_element(a, k), Z.basis_element(b, l));
								if (br.pos.count(c))
									want = ctx.embed_lie(c, br.pos.at(c));
							}
							if (ctx.lowest_height(comm) < i + j || slice(comm, i + j) != want)
							{
								R.bracket_ok = false;
								if (R.failure.empty())
									R.failure = "bracket of " + root_str(a) + " and " + root_str(b) + " differs";
							}
						}
				}
	for (int n = 1; n <= N; ++n)
		for (auto &a : degs[n])
			for (int k = 0; k < Z.dim(a); ++k)
			{
				GElt h = ctx.power(rep(a, k), p);
				long m = (long)n * p;
				if (m > N)
				{
					if (h != ctx.identity())
						R.p_operation_ok = false;
					continue;
				}
				if (ctx.lowest_height(h) < m || !solve_mod_p(V[m], slice(h, (int)m), p))
				{
					R.p_operation_ok = false;
					if (R.failure.empty())
						R.failure = "p-operation leaves the lattice in degree " + root_str(a);
				}
			}
	R.holds = R.d_equals_gamma && R.chain_ok && R.leading_ok && R.bracket_ok && R.p_operation_ok;
	return R;
}

std::vector<CommutationConstant> commutation_constants(const GCM &A, const RootVec &alpha, const RootVec &beta)
{
	Interval iv;
	for (int H = 2 * (height(alpha) + height(beta));; H *= 2)
	{
		if (H > 256)
			throw Error("NotPrenilpotent", "interval not bounded within height 256");
		RootTable t = enumerate_roots(A, H);
		iv = prenilpotent_interval(t, alpha, beta);
		if (iv.reason == "Unbounded")
			throw Error("NotPrenilpotent", root_str(alpha) + " and " + root_str(beta) + " span an imaginary root");
		if (iv.reason.empty())
			break;
	}
	int N = std::max(height(alpha), height(beta));
	for (auto &g : iv.roots)
		N = std::max(N, height(g));
	TruncCtx U(A, N, Scalars::rationals());
	BandContext &Q = U.band();
	auto xr = [&](const RootVec &g, const Rat &r) { return exp_series(U, U.from_lie(Q.real_root_vector(g)), r); };
	EnvElement xa = xr(alpha, 1), xb = xr(beta, 1);
	EnvElement c = U.mul(U.mul(xa, xb), U.mul(U.antipode(xa), U.antipode(xb)));
	std::vector<CommutationConstant> out;
	for (size_t t = 0; t < iv.roots.size(); ++t)
	{
		const RootVec &g = iv.roots[t];
		auto [i, j] = iv.coeffs[t];
		if (i == 0 || j == 0)
			continue;
		LieElement eg = Q.real_root_vector(g);
		const RatVec &ev = eg.pos.at(g);
		int slot = 0;
		while (ev[slot] == 0)
			++slot;
		auto it = c.terms.find(Mono{{U.id_of(g, slot), 1}});
		Rat coef = it == c.terms.end() ? Rat(0) : it->second / ev[slot];
		if (coef.get_den() != 1)
			throw Error("Internal", "non-integral commutation constant");
		if (coef != 0)
		{
			out.push_back({i, j, g, coef.get_num()});
			c = U.mul(xr(g, -coef), c);
		}
	}
	if (!(c == U.one()))
		throw Error("Internal", "commutator is not a product over the interval");
	return out;
}

size_t minimal_U_image_order(QuotCtx &ctx) { return ctx.generated(ctx.real_root_generators()).order(); }

} // namespace kmforge
