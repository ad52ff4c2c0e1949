#include "kmforge/liealg.hpp"

#include <algorithm>
#include <functional>

namespace kmforge {

static bool vec_zero(const RatVec &v)
{
	for (auto &x : v)
		if (x != 0)
			return false;
	return true;
}

static void axpy(RatVec &acc, const RatVec &x, const Rat &c)
{
	if (acc.size() < x.size())
		acc.resize(x.size());
	for (size_t k = 0; k < x.size(); ++k)
		if (x[k] != 0)
			acc[k] += c * x[k];
}

static void add_sector(std::map<RootVec, RatVec, DegreeLess> &acc, const RootVec &d, const RatVec &x, const Rat &c)
{
	if (c == 0 || vec_zero(x))
		return;
	auto it = acc.find(d);
	if (it == acc.end())
	{
		RatVec v(x.size());
		axpy(v, x, c);
		acc.emplace(d, std::move(v));
	}
	else
		axpy(it->second, x, c);
}

bool LieElement::is_zero() const
{
	for (auto &[d, v] : pos)
		if (!vec_zero(v))
			return false;
	for (auto &[d, v] : neg)
		if (!vec_zero(v))
			return false;
	return vec_zero(cartan);
}

bool LieElement::operator==(const LieElement &o) const { return (*this - o).is_zero(); }

std::optional<RootVec> LieElement::degree(int rank) const
{
	std::optional<RootVec> d;
	auto take = [&](RootVec v) {
		if (d && *d != v)
			return false;
		d = v;
		return true;
	};
	for (auto &[a, v] : pos)
		if (!vec_zero(v) && !take(a))
			return std::nullopt;
	for (auto &[a, v] : neg)
		if (!vec_zero(v) && !take(scale(a, -1)))
			return std::nullopt;
	if (!vec_zero(cartan) && !take(RootVec(rank, 0)))
		return std::nullopt;
	return d;
}

LieElement operator+(const LieElement &a, const LieElement &b)
{
	LieElement r = a;
	for (auto &[d, v] : b.pos)
		add_sector(r.pos, d, v, 1);
	for (auto &[d, v] : b.neg)
		add_sector(r.neg, d, v, 1);
	if (!b.cartan.empty())
		axpy(r.cartan, b.cartan, 1);
	return r;
}

LieElement operator*(const Rat &c, const LieElement &a)
{
	LieElement r;
	for (auto &[d, v] : a.pos)
		add_sector(r.pos, d, v, c);
	for (auto &[d, v] : a.neg)
		add_sector(r.neg, d, v, c);
	if (!a.cartan.empty())
	{
		r.cartan = a.cartan;
		for (auto &x : r.cartan)
			x *= c;
	}
	return r;
}

LieElement operator-(const LieElement &a, const LieElement &b) { return a + Rat(-1) * b; }

LieElement omega(const LieElement &x)
{
	LieElement r;
	r.pos = x.neg;
	r.neg = x.pos;
	r.cartan = x.cartan;
	for (auto &c : r.cartan)
		c = -c;
	return r;
}

std::vector<RootVec> degrees_of_height(int rank, int n)
{
	std::vector<RootVec> out;
	RootVec cur(rank, 0);
	std::function<void(int, int)> rec = [&](int i, int left) {
		if (i == rank - 1)
		{
			cur[i] = left;
			out.push_back(cur);
			return;
		}
		for (int x = left; x >= 0; --x)
		{
			cur[i] = x;
			rec(i + 1, left - x);
		}
	};
	if (rank > 0)
		rec(0, n);
	std::sort(out.begin(), out.end(), degree_less);
	return out;
}

BandContext::BandContext(GCM A, int N, Scalars s) : A_(std::move(A)), N_(N), S_(s), fl_(A_.rank())
{
	if (N < 1)
		throw Error("InvalidInput", "height bound must be at least 1");
}

const DegreeData &BandContext::degree(const RootVec &a)
{
	std::lock_guard<std::recursive_mutex> lk(mu_);
	auto it = deg_.find(a);
	if (it != deg_.end())
		return *it->second;
	auto d = std::make_unique<DegreeData>(build_degree(a));
	auto &ref = *d;
	deg_.emplace(a, std::move(d));
	return ref;
}

int BandContext::dim(const RootVec &a)
{
	if (!is_positive(a))
		return 0;
	return degree(a).dim;
}

int BandContext::serre_ideal_dim(const RootVec &a)
{
	const DegreeData &d = degree(a);
	if (d.full)
		return (int)d.lyndon_total.get_si();
	return d.ideal.rank();
}

DegreeData BandContext::build_degree(const RootVec &a)
{
	DegreeData d;
	d.deg = a;
	int r = rank();
	if (!is_positive(a))
	{
		d.full = true;
		return d;
	}
	int ht = height(a);
	if (ht == 1)
	{
		int i = (int)(std::find(a.begin(), a.end(), 1) - a.begin());
		d.words = {Word(1, (char)i)};
		d.col[d.words[0]] = 0;
		d.ideal = Echelon(1);
		d.free = {0};
		d.dim = 1;
		d.lyndon_total = 1;
		d.basis = RatBasis({RatVec{1}});
		return d;
	}
	bool any = false;
	for (int k = 0; k < r; ++k)
		if (a[k] > 0)
		{
			RootVec b = a;
			b[k]--;
			if (dim(b) > 0)
				any = true;
		}
	if (!any)
	{
		d.full = true;
		d.lyndon_total = lyndon_count(a);
		return d;
	}
	d.words = fl_.lyndon_words(a);
	d.lyndon_total = (long)d.words.size();
	for (int c = 0; c < (int)d.words.size(); ++c)
		d.col[d.words[c]] = c;
	d.ideal = Echelon((int)d.words.size());
	auto insert = [&](const LieVecQ &v) {
		RatVec row(d.words.size());
		for (auto &[w, c] : v)
		{
			auto it = d.col.find(w);
			if (it == d.col.end())
				throw Error("Internal", "word " + word_str(w) + " outside degree " + root_str(a));
			row[it->second] = c;
		}
		d.ideal.insert(std::move(row));
	};
	// Serre generators
	for (int i = 0; i < r; ++i)
		for (int j = 0; j < r; ++j)
		{
			if (i == j)
				continue;
			long e = 1 - A_.at(i, j);
			RootVec g(r, 0);
			g[i] = (int)e;
			g[j] += 1;
			if (g != a)
				continue;
			LieVecQ v{{Word(1, (char)j), 1}};
			for (long t = 0; t < e; ++t)
				v = fl_.bracket(Word(1, (char)i), v);
			insert(v);
		}
	// [e_k, ideal in degree a - alpha_k]
	for (int k = 0; k < r; ++k)
	{
		if (a[k] == 0)
			continue;
		RootVec b = a;
		b[k]--;
		if (height(b) == 0)
			continue;
		const DegreeData &db = degree(b);
		Word letter(1, (char)k);
		if (db.full)
		{
			for (auto &w : fl_.lyndon_words(b))
				insert(fl_.bracket(letter, LieVecQ{{w, 1}}));
		}
		else
		{
			for (auto &row : db.ideal.rows())
			{
				LieVecQ v;
				for (size_t c = 0; c < row.size(); ++c)
					if (row[c] != 0)
						v[db.words[c]] = row[c];
				insert(fl_.bracket(letter, v));
			}
		}
	}
	d.free = d.ideal.free_columns();
	d.dim = (int)d.free.size();
	if (d.dim == 0)
		return d;
	if (S_.kind == ScalarKind::Rational)
	{
		std::vector<RatVec> id(d.dim, RatVec(d.dim));
		for (int k = 0; k < d.dim; ++k)
			id[k][k] = 1;
		d.basis = RatBasis(id);
	}
	else
		d.basis = RatBasis(lattice_basis(a, d));
	return d;
}

// free-column coordinates of a Lyndon vector of degree a, after reduction
static RatVec free_coords(const DegreeData &d, const LieVecQ &v)
{
	RatVec row(d.words.size());
	for (auto &[w, c] : v)
	{
		auto it = d.col.find(w);
		if (it == d.col.end())
			throw Error("Internal", "word " + word_str(w) + " outside degree " + root_str(d.deg));
		row[it->second] = c;
	}
	row = d.ideal.reduce(std::move(row));
	RatVec out(d.free.size());
	for (size_t t = 0; t < d.free.size(); ++t)
		out[t] = row[d.free[t]];
	return out;
}

std::vector<RatVec> BandContext::lattice_basis(const RootVec &a, DegreeData &d)
{
	int r = rank();
	std::vector<RatVec> gens;
	// all splits a = b + c with both parts carrying root spaces
	std::vector<RootVec> parts;
	RootVec cur(r, 0);
	std::function<void(int)> rec = [&](int i) {
		if (i == r)
		{
			if (height(cur) > 0 && cur != a)
				parts.push_back(cur);
			return;
		}
		for (int x = 0; x <= a[i]; ++x)
		{
			cur[i] = x;
			rec(i + 1);
		}
	};
	rec(0);
	for (auto &b : parts)
	{
		RootVec c = sub(a, b);
		if (c < b)
			continue;
		int db = dim(b), dc = dim(c);
		if (!db || !dc)
			continue;
		for (int k = 0; k < db; ++k)
			for (int l = (b == c ? k + 1 : 0); l < dc; ++l)
			{
				RatVec ek(db), el(dc);
				ek[k] = 1;
				el[l] = 1;
				gens.push_back(free_coords(d, fl_.bracket(lift(b, ek), lift(c, el))));
			}
	}
	for (int i = 0; i < r; ++i)
		for (int s = 2; s <= a[i]; ++s)
		{
			RootVec b = a;
			b[i] -= s;
			if (height(b) == 0 || dim(b) == 0)
				continue;
			Word letter(1, (char)i);
			Int fs = factorial(s);
			for (int k = 0; k < dim(b); ++k)
			{
				RatVec ek(dim(b));
				ek[k] = 1;
				LieVecQ v = lift(b, ek);
				for (int t = 0; t < s; ++t)
					v = fl_.bracket(letter, v);
				for (auto &[w, c] : v)
					c /= fs;
				gens.push_back(free_coords(d, v));
			}
		}
	auto basis = rational_lattice_basis(gens, d.dim);
	if ((int)basis.size() != d.dim)
		throw Error("Internal", "lattice in degree " + root_str(a) + " has wrong rank");
	return basis;
}

LieVecQ BandContext::lift(const RootVec &a, const RatVec &coords)
{
	const DegreeData &d = degree(a);
	RatVec fc = d.basis.combine(coords);
	LieVecQ v;
	for (size_t t = 0; t < d.free.size(); ++t)
		if (fc[t] != 0)
			v[d.words[d.free[t]]] = fc[t];
	return v;
}

RatVec BandContext::coords_of(const RootVec &a, const LieVecQ &v)
{
	const DegreeData &d = degree(a);
	if (d.dim == 0)
		return {};
	return d.basis.coords(free_coords(d, v));
}

const std::vector<std::vector<RatVec>> &BandContext::structure(const RootVec &b, const RootVec &c)
{
	std::lock_guard<std::recursive_mutex> lk(mu_);
	auto key = std::make_pair(b, c);
	auto it = struct_.find(key);
	if (it != struct_.end())
		return it->second;
	RootVec a = add(b, c);
	int db = dim(b), dc = dim(c), da = dim(a);
	std::vector<std::vector<RatVec>> T(db, std::vector<RatVec>(dc, RatVec(da)));
	if (da > 0)
		for (int k = 0; k < db; ++k)
		{
			RatVec ek(db);
			ek[k] = 1;
			LieVecQ x = lift(b, ek);
			for (int l = 0; l < dc; ++l)
			{
				RatVec el(dc);
				el[l] = 1;
				T[k][l] = coords_of(a, fl_.bracket(x, lift(c, el)));
			}
		}
	return struct_.emplace(key, std::move(T)).first->second;
}

LieVecQ BandContext::fdiff(int j, const Word &u)
{
	std::lock_guard<std::recursive_mutex> lk(mu_);
	auto key = std::make_pair(j, u);
	auto it = fdiff_.find(key);
	if (it != fdiff_.end())
		return it->second;
	int r = rank();
	auto coroot_pairing = [&](const Word &w) {
		long s = 0;
		for (char x : w)
			s += A_.at(j, (int)x);
		return s;
	};
	LieVecQ out;
	if (u.size() >= 2)
	{
		auto [u1, u2] = standard_factorization(u);
		if (u1.size() == 1)
		{
			if ((int)u1[0] == j)
				add_into(out, LieVecQ{{u2, 1}}, Rat(coroot_pairing(u2)));
		}
		else
			add_into(out, fl_.bracket(fdiff(j, u1), LieVecQ{{u2, 1}}), 1);
		if (u2.size() == 1)
		{
			if ((int)u2[0] == j)
				add_into(out, LieVecQ{{u1, 1}}, Rat(-coroot_pairing(u1)));
		}
		else
			add_into(out, fl_.bracket(LieVecQ{{u1, 1}}, fdiff(j, u2)), 1);
	}
	(void)r;
	return fdiff_.emplace(key, out).first->second;
}

const std::vector<RatVec> &BandContext::fmatrix(int j, const RootVec &a)
{
	std::lock_guard<std::recursive_mutex> lk(mu_);
	auto key = std::make_pair(j, a);
	auto it = fmat_.find(key);
	if (it != fmat_.end())
		return it->second;
	RootVec b = a;
	b[j]--;
	int da = dim(a);
	std::vector<RatVec> M(da);
	for (int k = 0; k < da; ++k)
	{
		RatVec ek(da);
		ek[k] = 1;
		LieVecQ acc;
		for (auto &[w, c] : lift(a, ek))
			add_into(acc, fdiff(j, w), c);
		M[k] = dim(b) > 0 ? coords_of(b, acc) : RatVec();
	}
	return fmat_.emplace(key, std::move(M)).first->second;
}

LieElement BandContext::zero() const { return LieElement(); }

LieElement BandContext::e(int i) { return basis_element(simple_root(rank(), i), 0); }
LieElement BandContext::f(int i) { return neg_basis_element(simple_root(rank(), i), 0); }

LieElement BandContext::h(int i)
{
	LieElement x;
	x.cartan.assign(rank(), 0);
	x.cartan[i] = 1;
	return x;
}

LieElement BandContext::basis_element(const RootVec &a, int k)
{
	int d = dim(a);
	if (k < 0 || k >= d)
		throw Error("InvalidInput", "no basis element " + std::to_string(k) + " in degree " + root_str(a));
	if (height(a) > N_)
		throw Error("BandOverflow", "degree " + root_str(a) + " exceeds height bound");
	LieElement x;
	RatVec v(d);
	v[k] = 1;
	x.pos[a] = v;
	return x;
}

LieElement BandContext::neg_basis_element(const RootVec &a, int k) { return omega(basis_element(a, k)); }

LieElement BandContext::from_lyndon(const RootVec &a, const LieVecQ &v)
{
	LieElement x;
	if (dim(a) > 0)
		x.pos[a] = coords_of(a, v);
	normalize(x);
	return x;
}

void BandContext::normalize(LieElement &x) const
{
	auto fix = [&](std::map<RootVec, RatVec, DegreeLess> &m) {
		for (auto it = m.begin(); it != m.end();)
		{
			for (auto &c : it->second)
				c = S_.norm(c);
			it = vec_zero(it->second) ? m.erase(it) : std::next(it);
		}
	};
	fix(x.pos);
	fix(x.neg);
	for (auto &c : x.cartan)
		c = S_.norm(c);
	if (vec_zero(x.cartan))
		x.cartan.clear();
}

void BandContext::band_check(LieElement &x)
{
	for (auto *m : {&x.pos, &x.neg})
		for (auto &[d, v] : *m)
			if (height(d) > N_ && !vec_zero(v))
			{
				bool nonzero = false;
				for (auto &c : v)
					if (!S_.is_zero(c))
						nonzero = true;
				if (nonzero)
					throw Error("BandOverflow", "term of degree " + root_str(d) + " exceeds height " +
					                                std::to_string(N_));
			}
}

void BandContext::require_integral(const LieElement &x, const char *what) const
{
	if (S_.kind == ScalarKind::Rational)
		return;
	auto chk = [&](const RatVec &v) {
		for (auto &c : v)
			if (c.get_den() != 1)
				throw Error("NonIntegralDividedPower", std::string(what) + " leaves the lattice (coefficient " +
				                                           c.get_str() + ")");
	};
	for (auto &[d, v] : x.pos)
		chk(v);
	for (auto &[d, v] : x.neg)
		chk(v);
	chk(x.cartan);
}

LieElement BandContext::raw_ad_e(int j, const LieElement &x)
{
	int r = rank();
	LieElement out;
	RootVec aj = simple_root(r, j);
	for (auto &[a, v] : x.pos)
	{
		RootVec b = add(a, aj);
		if (dim(b) == 0)
			continue;
		auto &T = structure(aj, a);
		RatVec acc(dim(b));
		for (size_t l = 0; l < v.size(); ++l)
			if (v[l] != 0)
				axpy(acc, T[0][l], v[l]);
		add_sector(out.pos, b, acc, 1);
	}
	if (!x.cartan.empty())
	{
		// [e_j, h] = -<alpha_j, h> e_j
		Rat s = 0;
		for (int i = 0; i < r; ++i)
			s += x.cartan[i] * A_.at(i, j);
		add_sector(out.pos, aj, RatVec{1}, -s);
	}
	for (auto &[a, v] : x.neg)
	{
		// [e_j, omega y] = omega [f_j, y]
		if (a == aj)
		{
			if (out.cartan.empty())
				out.cartan.assign(r, 0);
			out.cartan[j] -= v[0];
			continue;
		}
		if (a[j] == 0)
			continue;
		RootVec b = a;
		b[j]--;
		if (dim(b) == 0)
			continue;
		auto &M = fmatrix(j, a);
		RatVec acc(dim(b));
		for (size_t k = 0; k < v.size(); ++k)
			if (v[k] != 0)
				axpy(acc, M[k], v[k]);
		add_sector(out.neg, b, acc, 1);
	}
	return out;
}

LieElement BandContext::raw_ad_f(int j, const LieElement &x) { return omega(raw_ad_e(j, omega(x))); }

LieElement BandContext::unfold_word(const Word &u, bool negative, const LieElement &y)
{
	if (u.size() == 1)
		return negative ? raw_ad_f((int)u[0], y) : raw_ad_e((int)u[0], y);
	auto [u1, u2] = standard_factorization(u);
	return unfold_word(u1, negative, unfold_word(u2, negative, y)) -
	       unfold_word(u2, negative, unfold_word(u1, negative, y));
}

LieElement BandContext::unfold(const BasisId &a, const LieElement &y)
{
	RatVec ek(dim(a.deg));
	ek[a.k] = 1;
	LieElement out;
	for (auto &[w, c] : lift(a.deg, ek))
		out = out + c * unfold_word(w, a.sector < 0, y);
	return out;
}

LieElement BandContext::basis_bracket(const BasisId &a, const BasisId &b)
{
	int r = rank();
	auto elem = [&](const BasisId &x) {
		if (x.sector == 0)
			return h(x.k);
		LieElement e;
		RatVec v(dim(x.deg));
		v[x.k] = 1;
		(x.sector > 0 ? e.pos : e.neg)[x.deg] = v;
		return e;
	};
	if (a.sector == 0 && b.sector == 0)
		return LieElement();
	if (b.sector == 0)
		return Rat(-1) * basis_bracket(b, a);
	if (a.sector == 0)
	{
		long s = 0;
		for (int k = 0; k < r; ++k)
			s += (long)b.deg[k] * A_.at(a.k, k);
		return Rat(b.sector > 0 ? s : -s) * elem(b);
	}
	if (a.sector > 0 && b.sector > 0)
	{
		LieElement out;
		out.pos[add(a.deg, b.deg)] = structure(a.deg, b.deg)[a.k][b.k];
		return out;
	}
	if (a.sector < 0 && b.sector < 0)
	{
		LieElement out;
		out.neg[add(a.deg, b.deg)] = structure(a.deg, b.deg)[a.k][b.k];
		return out;
	}
	if (a.sector < 0)
		return Rat(-1) * basis_bracket(b, a);
	// a positive, b negative
	std::lock_guard<std::recursive_mutex> lk(mu_);
	auto key = std::make_pair(a, b);
	auto it = mixed_.find(key);
	if (it != mixed_.end())
		return it->second;
	LieElement res;
	if (height(a.deg) <= height(b.deg))
		res = unfold(a, elem(b));
	else
		res = Rat(-1) * unfold(b, elem(a));
	return mixed_.emplace(key, res).first->second;
}

LieElement BandContext::raw_bracket(const LieElement &x, const LieElement &y)
{
	auto terms = [&](const LieElement &z) {
		std::vector<std::pair<BasisId, Rat>> t;
		for (auto &[d, v] : z.pos)
			for (size_t k = 0; k < v.size(); ++k)
				if (v[k] != 0)
					t.push_back({BasisId{1, d, (int)k}, v[k]});
		for (auto &[d, v] : z.neg)
			for (size_t k = 0; k < v.size(); ++k)
				if (v[k] != 0)
					t.push_back({BasisId{-1, d, (int)k}, v[k]});
		for (size_t k = 0; k < z.cartan.size(); ++k)
			if (z.cartan[k] != 0)
				t.push_back({BasisId{0, simple_root(rank(), (int)k), (int)k}, z.cartan[k]});
		return t;
	};
	LieElement out;
	auto tx = terms(x), ty = terms(y);
	for (auto &[a, ca] : tx)
		for (auto &[b, cb] : ty)
			out = out + (ca * cb) * basis_bracket(a, b);
	return out;
}

LieElement BandContext::bracket(const LieElement &x, const LieElement &y)
{
	LieElement r = raw_bracket(x, y);
	band_check(r);
	normalize(r);
	return r;
}

LieElement BandContext::ad_e(int j, const LieElement &x) { return ad_divided_power(j, 1, 1, x); }
LieElement BandContext::ad_f(int j, const LieElement &x) { return ad_divided_power(j, -1, 1, x); }

LieElement BandContext::ad_divided_power(int i, int sign, int s, const LieElement &x)
{
	if (s < 0)
		throw Error("InvalidInput", "negative divided power");
	LieElement y = x;
	for (int t = 0; t < s && !y.is_zero(); ++t)
	{
		y = sign > 0 ? raw_ad_e(i, y) : raw_ad_f(i, y);
		band_check(y);
	}
	y = Rat(1, 1) / Rat(factorial(s)) * y;
	require_integral(y, "divided power");
	normalize(y);
	return y;
}

LieElement BandContext::s_i_star(int i, const LieElement &x)
{
	auto expo = [&](int sign, const LieElement &y) {
		LieElement acc = y, t = y;
		for (int s = 1; s <= 8 * N_ + 8; ++s)
		{
			t = sign > 0 ? raw_ad_e(i, t) : raw_ad_f(i, t);
			band_check(t);
			if (t.is_zero())
				break;
			LieElement term = Rat(1) / Rat(factorial(s)) * t;
			require_integral(term, "s_i* exponential");
			acc = acc + term;
		}
		normalize(acc);
		return acc;
	};
	return expo(1, expo(-1, expo(1, x)));
}

LieElement BandContext::real_root_vector(const RootVec &alpha)
{
	Descent d = descend(A_, alpha);
	if (d.kind != RootKind::Real)
		throw Error("NotRealRoot", root_str(alpha) + " is not a real root");
	if (height(alpha) > N_)
		throw Error("BandOverflow", "degree " + root_str(alpha) + " exceeds height bound");
	LieElement x = e(d.terminal);
	for (int k = (int)d.word.size() - 1; k >= 0; --k)
		x = s_i_star(d.word[k], x);
	auto deg = x.degree(rank());
	if (!deg || *deg != alpha)
		throw Error("Internal", "root vector landed in the wrong degree");
	return x;
}

std::vector<RootVec> BandContext::positive_degrees()
{
	std::vector<RootVec> out;
	std::vector<RootVec> layer;
	for (int i = 0; i < rank(); ++i)
		layer.push_back(simple_root(rank(), i));
	for (int h = 1; h <= N_ && !layer.empty(); ++h)
	{
		std::sort(layer.begin(), layer.end(), degree_less);
		std::vector<RootVec> next;
		for (auto &a : layer)
		{
			out.push_back(a);
			for (int k = 0; k < rank(); ++k)
			{
				RootVec b = a;
				b[k]++;
				if (std::find(next.begin(), next.end(), b) == next.end() && h < N_ && dim(b) > 0)
					next.push_back(b);
			}
		}
		layer = next;
	}
	return out;
}

std::vector<Int> serre_ideal_dims(const GCM &A, int max_total_degree)
{
	BandContext ctx(A, std::max(1, max_total_degree), Scalars::rationals());
	std::vector<Int> out;
	for (int n = 1; n <= max_total_degree; ++n)
	{
		Int total = 0, lyn = 0, quot = 0;
		for (auto &a : degrees_of_height(A.rank(), n))
		{
			const DegreeData &d = ctx.degree(a);
			if (!d.full && (Int)(long)d.words.size() != lyndon_count(a))
				throw Error("Internal", "Lyndon word count mismatch in degree " + root_str(a));
			total += ctx.serre_ideal_dim(a);
			lyn += lyndon_count(a);
			quot += d.dim;
		}
		if (total != lyn - quot)
			throw Error("Internal", "dimension identity fails at height " + std::to_string(n));
		out.push_back(total);
	}
	return out;
}

GKKernel gk_degree_kernel(BandContext &ctx, const RootVec &delta)
{
	if (!ctx.scalars().is_prime())
		throw Error("InvalidInput", "the degree test runs over a prime field");
	GKKernel out;
	int d = ctx.dim(delta);
	if (d == 0)
		return out;
	if (descend(ctx.gcm(), delta).kind != RootKind::Imaginary)
		throw Error("NotImaginary", root_str(delta) + " is not an imaginary root");
	uint64_t p = ctx.scalars().p;
	std::vector<std::vector<uint64_t>> rows;
	for (int i = 0; i < ctx.rank(); ++i)
		for (int s = 1; s <= delta[i]; ++s)
		{
			std::vector<LieElement> imgs;
			for (int k = 0; k < d; ++k)
				imgs.push_back(ctx.ad_divided_power(i, -1, s, ctx.basis_element(delta, k)));
			RootVec b = delta;
			b[i] -= s;
			int db = ctx.dim(b);
			for (int t = 0; t < db; ++t)
			{
				std::vector<uint64_t> row(d, 0);
				for (int k = 0; k < d; ++k)
				{
					auto it = imgs[k].pos.find(b);
					if (it != imgs[k].pos.end())
						row[k] = mod_p(it->second[t], (uint32_t)p);
				}
				rows.push_back(row);
			}
		}
	out.basis = kernel_mod_p(rows, d, p);
	out.dim = (int)out.basis.size();
	return out;
}

LemmaWitness lemma44_witness(long m, long n, uint32_t p)
{
	LemmaWitness w;
	w.m = m;
	w.n = n;
	w.p = p;
	if (m < 0 || n < 0 || m * n <= 4)
		throw Error("HypothesisViolated", "mn > 4 fails");
	if (p != 0 && !is_prime(p))
		throw Error("InvalidInput", "characteristic must be 0 or prime");
	auto good = [&](long x) { return x >= 3 && (p != 2 || x % 2 == 1); };
	long mm = m, nn = n;
	if (!good(n))
	{
		if (!good(m))
			throw Error("HypothesisViolated", p == 2 ? "in characteristic 2 one of m, n must be odd and at least 3"
			                                         : "one of m, n must be at least 3");
		std::swap(mm, nn);
		w.swapped = true;
	}
	GCM A = make_gcm({{2, -mm}, {-nn, 2}});
	RootVec gamma{1, (int)nn};
	RootVec target, delta;
	int i;
	long c2 = 2 - mm * nn;
	if (p == 0 || c2 % (long)p != 0)
	{
		w.branch = 1;
		delta = {2, (int)nn};
		target = gamma;
		i = 0;
	}
	else
	{
		w.branch = 2;
		target = reflect_root(A, 0, gamma);
		delta = add(target, RootVec{0, 1});
		i = 1;
	}
	BandContext ctx(A, height(delta), Scalars::rationals());
	LieElement et = ctx.real_root_vector(target);
	LieElement x = ctx.bracket(ctx.e(i), et);
	LieElement y = ctx.bracket(ctx.f(i), x);
	Rat c = y.is_zero() ? Rat(0) : y.pos.at(target)[0] / et.pos.at(target)[0];
	if (!(y == c * et))
		throw Error("Internal", "[f_i, x] is not a multiple of e_gamma");
	w.coefficient = rat_to_int(c, "witness coefficient");
	w.coefficient_mod_p = p ? mod_p(c, p) : 0;
	w.nonzero = p ? w.coefficient_mod_p != 0 : w.coefficient != 0;
	w.delta_imaginary = descend(A, delta).kind == RootKind::Imaginary && ctx.dim(delta) > 0;
	if (w.swapped)
	{
		std::swap(delta[0], delta[1]);
		std::swap(target[0], target[1]);
		i = 1 - i;
	}
	w.delta = delta;
	w.gamma = target;
	w.i = i;
	return w;
}

} // namespace kmforge
