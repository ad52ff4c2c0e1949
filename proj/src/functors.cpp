#include "kmforge/functors.hpp"

#include <algorithm>
#include <set>

namespace kmforge {

std::string to_string(MapKind k)
{
	switch (k)
	{
	case MapKind::Surjection:
		return "Surjection";
	case MapKind::Subsystem:
		return "Subsystem";
	case MapKind::Cover:
		return "Cover";
	}
	return "?";
}

RootVec GradedLatticeMap::apply_degree(const RootVec &a) const
{
	RootVec out(target.rank(), 0);
	for (int i = 0; i < source.rank(); ++i)
		if (a[i])
			out = add(out, scale(pi_bar[i], a[i]));
	return out;
}

int GradedLatticeMap::target_height(int n) const
{
	int best = 0;
	for (int h = 1; h <= n; ++h)
		for (auto &a : degrees_of_height(source.rank(), h))
			best = std::max(best, height(apply_degree(a)));
	return std::max(best, 1);
}

GradedLatticeMap make_pi_AB(const GCM &A, const GCM &B, const std::vector<int> &embedding)
{
	if ((int)embedding.size() != B.rank())
		throw Error("InvalidInput", "embedding must list a source index for every target index");
	std::set<int> seen;
	for (int x : embedding)
		if (x < 0 || x >= A.rank() || !seen.insert(x).second)
			throw Error("InvalidInput", "embedding must be injective into the source indices");
	if (!gcm_leq(B, A, embedding))
		throw Error("NotComparable", "target matrix is not below the source matrix");
	GradedLatticeMap m;
	m.kind = MapKind::Surjection;
	m.source = A;
	m.target = B;
	m.image_index.assign(A.rank(), -1);
	for (int b = 0; b < B.rank(); ++b)
		m.image_index[embedding[b]] = b;
	for (int i = 0; i < A.rank(); ++i)
		m.pi_bar.push_back(m.image_index[i] >= 0 ? simple_root(B.rank(), m.image_index[i]) : RootVec(B.rank(), 0));
	return m;
}

GradedLatticeMap make_pi_AB(const GCM &A, const GCM &B)
{
	if (A.rank() != B.rank())
		throw Error("NotComparable", "ranks differ and no embedding was given");
	std::vector<int> id(B.rank());
	for (int k = 0; k < B.rank(); ++k)
		id[k] = k;
	return make_pi_AB(A, B, id);
}

SubsystemResult make_subsystem_map(const GCM &B, const std::vector<RootVec> &betas)
{
	int n = (int)betas.size();
	if (n == 0)
		throw Error("InvalidInput", "no roots given");
	int maxh = 0;
	for (auto &b : betas)
	{
		if ((int)b.size() != B.rank() || !is_positive(b))
			throw Error("InvalidInput", "roots must be positive vectors of the target rank");
		maxh = std::max(maxh, height(b));
	}
	int H = 2 * maxh;
	RootTable t = enumerate_roots(B, H);
	for (auto &b : betas)
		if (!t.is_real(b))
			throw Error("NotRealRoot", root_str(b) + " is not a real root");
	Echelon ech(B.rank());
	for (auto &b : betas)
	{
		RatVec v(b.begin(), b.end());
		if (!ech.insert(v))
			throw Error("InvalidInput", "roots are linearly dependent");
	}
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
		{
			if (i == j)
				continue;
			RootVec d = sub(betas[i], betas[j]);
			if (is_positive(d) && t.contains(d))
				throw Error("DifferenceIsRoot", root_str(betas[i]) + " - " + root_str(betas[j]) + " is a root");
		}
	std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
	for (int i = 0; i < n; ++i)
	{
		CorootVec hv = coroot_of_real(B, betas[i], t);
		for (int j = 0; j < n; ++j)
			a[i][j] = Int(pairing(B, betas[j], hv));
	}
	SubsystemResult r;
	try
	{
		r.A = validate_gcm(a);
	}
	catch (const Error &e)
	{
		throw Error("NotGCM", e.what());
	}
	r.certified_to_height = H;
	r.map.kind = MapKind::Subsystem;
	r.map.source = r.A;
	r.map.target = B;
	r.map.betas = betas;
	r.map.pi_bar = betas;
	return r;
}

GradedLatticeMap make_cover_map(const GCM &A)
{
	GradedLatticeMap m;
	m.kind = MapKind::Cover;
	m.source = A;
	m.cover = simply_laced_cover(A);
	m.target = m.cover.cover_gcm;
	for (int i = 0; i < A.rank(); ++i)
	{
		RootVec d(m.target.rank(), 0);
		for (int v : m.cover.block(i))
			d[v] = 1;
		m.pi_bar.push_back(d);
	}
	return m;
}

FunnyChain funny_chain(const Int &a0, int steps)
{
	if (a0 < 2)
		throw Error("InvalidInput", "the chain starts at a >= 2");
	if (steps < 0)
		throw Error("InvalidInput", "negative step count");
	FunnyChain c;
	c.values.push_back(a0);
	for (int k = 0; k < steps; ++k)
	{
		Int a = c.values.back();
		Int next = a * (a * a - 3);
		GCM B = validate_gcm({{2, -a}, {-a, 2}});
		BigRootVec a1{1, 0}, a2{0, 1};
		BigRootVec b1 = reflect_root_big(B, 0, a2), b2 = reflect_root_big(B, 1, a1);
		BigRootVec c1 = reflect_coroot_big(B, 0, a2), c2 = reflect_coroot_big(B, 1, a1);
		FunnyStep s;
		s.a = a;
		s.next = next;
		s.pairing12 = pairing_big(B, b1, c2);
		s.pairing21 = pairing_big(B, b2, c1);
		s.certified = s.pairing12 == -next && s.pairing21 == -next;
		c.steps.push_back(s);
		c.values.push_back(next);
	}
	return c;
}

LieMap::LieMap(const GradedLatticeMap &m, BandContext &target) : m_(m), B_(target) {}

LieElement LieMap::generator_image(int i)
{
	switch (m_.kind)
	{
	case MapKind::Surjection:
		return m_.image_index[i] >= 0 ? B_.e(m_.image_index[i]) : B_.zero();
	case MapKind::Subsystem:
		return B_.real_root_vector(m_.betas[i]);
	case MapKind::Cover:
	{
		LieElement x;
		for (int v : m_.cover.block(i))
			x = x + B_.e(v);
		return x;
	}
	}
	return B_.zero();
}

LieElement LieMap::image_of_word(const Word &w)
{
	auto it = memo_.find(w);
	if (it != memo_.end())
		return it->second;
	LieElement r;
	if (w.size() == 1)
		r = generator_image((int)w[0]);
	else
	{
		auto [u, v] = standard_factorization(w);
		LieElement x = image_of_word(u);
		LieElement y = x.is_zero() ? x : image_of_word(v);
		r = (x.is_zero() || y.is_zero()) ? LieElement() : B_.bracket(x, y);
	}
	return memo_.emplace(w, r).first->second;
}

LieElement LieMap::apply(BandContext &source, const LieElement &x)
{
	if (!x.neg.empty() || !x.cartan.empty())
		throw Error("InvalidInput", "maps are applied to elements of n+");
	LieElement out;
	for (auto &[a, v] : x.pos)
		for (auto &[w, c] : source.lift(a, v))
			out = out + c * image_of_word(w);
	B_.normalize(out);
	return out;
}

LieElement LieMap::serre_image(int i, int j)
{
	LieElement y = generator_image(j), x = generator_image(i);
	long n = 1 - m_.source.at(i, j);
	for (long k = 0; k < n && !y.is_zero(); ++k)
		y = B_.bracket(x, y);
	return y;
}

LieElement apply_lie(const GradedLatticeMap &m, BandContext &ctxA, BandContext &ctxB, const LieElement &x)
{
	LieMap L(m, ctxB);
	return L.apply(ctxA, x);
}

EnvElement apply_group(const GradedLatticeMap &m, TruncCtx &UA, TruncCtx &UB, const EnvElement &g)
{
	if (UB.N() > UA.N())
		throw Error("InvalidInput", "target truncation exceeds the source truncation");
	for (auto &d : m.pi_bar)
		if (height(d) == 0 && m.kind != MapKind::Surjection)
			throw Error("InvalidInput", "generator image of height zero");
	if (!UA.is_grouplike(g))
		throw Error("NotGroupLike", "apply_group needs a group-like element");
	LieMap L(m, UB.band());
	std::map<int, EnvElement> img;
	EnvElement out;
	for (auto &[mono, c] : g.terms)
	{
		EnvElement acc = UB.one();
		for (auto &[id, k] : mono)
		{
			auto it = img.find(id);
			if (it == img.end())
			{
				LieElement x = UA.band().basis_element(UA.basis_degree(id), UA.basis_slot(id));
				it = img.emplace(id, UB.from_lie(L.apply(UA.band(), x))).first;
			}
			acc = UB.mul(acc, UB.scale(Rat(1) / Rat(factorial(k)), UB.power(it->second, k)));
			if (acc.terms.empty())
				break;
		}
		out = UB.add(out, UB.scale(c, acc));
	}
	return out;
}

static int rank_of(const std::vector<RatVec> &rows, const Scalars &S)
{
	if (rows.empty())
		return 0;
	if (S.is_prime())
	{
		std::vector<std::vector<uint64_t>> m;
		for (auto &r : rows)
		{
			std::vector<uint64_t> v;
			for (auto &x : r)
				v.push_back(mod_p(x, S.p));
			m.push_back(v);
		}
		return rank_mod_p(m, S.p);
	}
	Echelon e((int)rows[0].size());
	for (auto &r : rows)
		e.insert(r);
	return e.rank();
}

SurjectivityReport surjectivity_report(const GradedLatticeMap &m, BandContext &ctxA, BandContext &ctxB)
{
	SurjectivityReport R;
	LieMap L(m, ctxB);
	std::map<RootVec, std::vector<RootVec>> pre;
	for (auto &a : ctxA.positive_degrees())
		pre[m.apply_degree(a)].push_back(a);
	for (auto &b : ctxB.positive_degrees())
	{
		DegreeRank d;
		d.degree = b;
		d.target_dim = ctxB.dim(b);
		std::vector<RatVec> rows;
		for (auto &a : pre[b])
			for (int k = 0; k < ctxA.dim(a); ++k)
			{
				LieElement y = L.apply(ctxA, ctxA.basis_element(a, k));
				if (y.pos.count(b))
					rows.push_back(y.pos.at(b));
			}
		d.image_rank = rank_of(rows, ctxB.scalars());
		if (d.image_rank != d.target_dim)
			R.full = false;
		R.degrees.push_back(d);
	}
	return R;
}

std::vector<KilledRoot> kernel_detect(const GradedLatticeMap &m, BandContext &ctxA, BandContext &ctxB)
{
	if (m.kind != MapKind::Surjection)
		throw Error("InvalidInput", "kernel detection applies to surjections");
	const GCM &A = m.source, &B = m.target;
	// indices touched by a strictly smaller entry or dropped
	std::set<int> weak;
	for (int i = 0; i < A.rank(); ++i)
	{
		if (m.image_index[i] < 0)
		{
			weak.insert(i);
			continue;
		}
		for (int j = 0; j < A.rank(); ++j)
			if (i != j && m.image_index[j] >= 0 && B.entry(m.image_index[i], m.image_index[j]) > A.entry(i, j))
			{
				weak.insert(i);
				weak.insert(j);
			}
	}
	bool forms = A.is_symmetric() && B.is_symmetric();
	std::vector<long> ones_a(A.rank(), 1), ones_b(B.rank(), 1);
	LieMap L(m, ctxB);
	RootTable t = enumerate_roots(ctxA, ctxA.N());
	std::vector<KilledRoot> out;
	for (auto &a : t.real_roots())
	{
		bool meets = false;
		for (int i : weak)
			if (a[i])
				meets = true;
		if (!meets)
			continue;
		KilledRoot k;
		k.root = a;
		k.image = m.apply_degree(a);
		if (forms)
		{
			k.form_source = sym_form(A, ones_a, a, a);
			k.form_target = sym_form(B, ones_b, k.image, k.image);
			k.form_certificate = k.form_source < k.form_target;
		}
		if (height(k.image) <= ctxB.N())
			k.zero_certificate = L.apply(ctxA, ctxA.real_root_vector(a)).is_zero();
		if (k.form_certificate || k.zero_certificate)
			out.push_back(k);
	}
	return out;
}

MinimalImageOrders minimal_image_orders(const GradedLatticeMap &m, uint32_t p, int N)
{
	MinimalImageOrders R;
	QuotCtx Q(m.target, p, N);
	BandContext src(m.source, 2 * N, Scalars::rationals());
	TruncCtx &U = Q.env();
	LieMap L(m, U.band());
	RootTable t = enumerate_roots(src, N);
	std::vector<GElt> gens;
	for (auto &a : t.real_roots())
	{
		LieElement y = L.apply(src, src.real_root_vector(a));
		EnvElement Y = U.from_lie(y), acc = U.one(), pw = U.one();
		for (int n = 1; n <= N; ++n)
		{
			pw = U.scale(Rat(1, n), U.mul(pw, Y));
			if (pw.terms.empty())
				break;
			acc = U.add(acc, pw);
		}
		gens.push_back(Q.from_env(acc));
	}
	R.image_order = Q.generated(gens).order();
	R.target_minimal_order = minimal_U_image_order(Q);
	R.target_full_order = Q.full().order();
	return R;
}

} // namespace kmforge
