#include "kmforge/enveloping.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace kmforge {

Rat EnvElement::constant() const
{
	auto it = terms.find(Mono());
	return it == terms.end() ? Rat(0) : it->second;
}

static Int mono_fact(const Mono &m)
{
	Int f = 1;
	for (auto &[id, k] : m)
		f *= factorial(k);
	return f;
}

static void add_term(std::map<Mono, Rat> &acc, const Mono &m, const Rat &c)
{
	if (c == 0)
		return;
	Rat &slot = acc[m];
	slot += c;
	if (slot == 0)
		acc.erase(m);
}

static Mono compress(const std::vector<int> &seq)
{
	Mono m;
	for (int id : seq)
	{
		if (!m.empty() && m.back().first == id)
			m.back().second++;
		else
			m.push_back({id, 1});
	}
	return m;
}

static std::vector<int> expand_mono(const Mono &m)
{
	std::vector<int> seq;
	for (auto &[id, k] : m)
		seq.insert(seq.end(), k, id);
	return seq;
}

TruncCtx::TruncCtx(GCM A, int N, Scalars k) : N_(N), S_(k)
{
	if (N < 1)
		throw Error("InvalidInput", "height bound must be at least 1");
	if (k.kind == ScalarKind::Integer)
		throw Error("InvalidInput", "the truncated enveloping algebra needs a field");
	if (k.is_prime() && k.p <= (uint32_t)N)
		throw Error("CharConstraint", "characteristic " + std::to_string(k.p) + " must exceed the height bound " +
		                                  std::to_string(N));
	band_ = std::make_unique<BandContext>(std::move(A), 2 * N, k);
	for (auto &a : band_->positive_degrees())
	{
		if (kmforge::height(a) > N)
			break;
		first_id_[a] = (int)ids_.size();
		for (int s = 0; s < band_->dim(a); ++s)
			ids_.push_back({a, s});
	}
}

int TruncCtx::id_of(const RootVec &a, int k) const
{
	auto it = first_id_.find(a);
	if (it == first_id_.end())
		throw Error("UnknownRoot", root_str(a) + " has no basis in the truncation");
	return it->second + k;
}

RootVec TruncCtx::degree(const Mono &m) const
{
	RootVec d(gcm().rank(), 0);
	for (auto &[id, k] : m)
		d = kmforge::add(d, kmforge::scale(ids_[id].first, k));
	return d;
}

int TruncCtx::height(const Mono &m) const
{
	int h = 0;
	for (auto &[id, k] : m)
		h += k * kmforge::height(ids_[id].first);
	return h;
}

std::vector<Mono> TruncCtx::monomials(const RootVec &a)
{
	std::vector<Mono> out;
	Mono cur;
	int target = kmforge::height(a);
	std::function<void(int, RootVec)> rec = [&](int id, RootVec left) {
		if (kmforge::height(left) == 0)
		{
			out.push_back(cur);
			return;
		}
		for (int b = id; b < num_basis(); ++b)
		{
			const RootVec &d = ids_[b].first;
			if (kmforge::height(d) > kmforge::height(left))
				break;
			RootVec l = left;
			for (int k = 1;; ++k)
			{
				l = sub(l, d);
				if (std::any_of(l.begin(), l.end(), [](int x) { return x < 0; }))
					break;
				cur.push_back({b, k});
				rec(b + 1, l);
				cur.pop_back();
			}
		}
	};
	if (target > 0)
		rec(0, a);
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<Mono> TruncCtx::all_monomials()
{
	std::vector<Mono> out;
	for (int h = 1; h <= N_; ++h)
		for (auto &a : degrees_of_height(gcm().rank(), h))
			for (auto &m : monomials(a))
				out.push_back(m);
	return out;
}

EnvElement TruncCtx::one() const
{
	EnvElement u;
	u.terms[Mono()] = 1;
	return u;
}

EnvElement TruncCtx::mono(const Mono &m, Rat c) const
{
	EnvElement u;
	c = S_.norm(c);
	if (c != 0 && height(m) <= N_)
		u.terms[m] = c;
	return u;
}

EnvElement TruncCtx::from_lie(const LieElement &x) const
{
	if (!x.neg.empty() || !x.cartan.empty())
		throw Error("InvalidInput", "only elements of n+ embed into the positive enveloping algebra");
	EnvElement u;
	for (auto &[a, v] : x.pos)
	{
		if (kmforge::height(a) > N_)
			continue;
		for (size_t k = 0; k < v.size(); ++k)
			add_term(u.terms, Mono{{id_of(a, (int)k), 1}}, v[k]);
	}
	normalize(u);
	return u;
}

void TruncCtx::normalize(EnvElement &a) const
{
	for (auto it = a.terms.begin(); it != a.terms.end();)
	{
		it->second = S_.norm(it->second);
		it = (it->second == 0 || height(it->first) > N_) ? a.terms.erase(it) : std::next(it);
	}
}

EnvElement TruncCtx::add(const EnvElement &a, const EnvElement &b) const
{
	EnvElement c = a;
	for (auto &[m, v] : b.terms)
		add_term(c.terms, m, v);
	normalize(c);
	return c;
}

EnvElement TruncCtx::scale(const Rat &c, const EnvElement &a) const
{
	EnvElement r;
	for (auto &[m, v] : a.terms)
		r.terms[m] = c * v;
	normalize(r);
	return r;
}

std::map<Mono, Rat> TruncCtx::straighten(const std::vector<int> &seq)
{
	size_t pos = seq.size();
	for (size_t t = 0; t + 1 < seq.size(); ++t)
		if (seq[t] > seq[t + 1])
		{
			pos = t;
			break;
		}
	if (pos == seq.size())
		return {{compress(seq), 1}};
	{
		std::lock_guard<std::recursive_mutex> lk(mu_);
		auto it = straight_.find(seq);
		if (it != straight_.end())
			return it->second;
	}
	int b = seq[pos], a = seq[pos + 1];
	std::vector<int> sw = seq;
	std::swap(sw[pos], sw[pos + 1]);
	std::map<Mono, Rat> out = straighten(sw);
	// b a = a b + [b, a]
	const RootVec &db = ids_[b].first, &da = ids_[a].first;
	RootVec dc = kmforge::add(db, da);
	if (kmforge::height(dc) <= N_ && first_id_.count(dc))
	{
		const RatVec &c = band_->structure(db, da)[ids_[b].second][ids_[a].second];
		for (size_t t = 0; t < c.size(); ++t)
		{
			if (c[t] == 0)
				continue;
			std::vector<int> rest(seq.begin(), seq.begin() + pos);
			rest.push_back(id_of(dc, (int)t));
			rest.insert(rest.end(), seq.begin() + pos + 2, seq.end());
			for (auto &[m, v] : straighten(rest))
				add_term(out, m, c[t] * v);
		}
	}
	std::lock_guard<std::recursive_mutex> lk(mu_);
	return straight_.emplace(seq, std::move(out)).first->second;
}

const std::map<Mono, Rat> &TruncCtx::mul_mono(const Mono &a, const Mono &b)
{
	std::lock_guard<std::recursive_mutex> lk(mu_);
	auto key = std::make_pair(a, b);
	auto it = mulmemo_.find(key);
	if (it != mulmemo_.end())
		return it->second;
	std::vector<int> seq = expand_mono(a), sb = expand_mono(b);
	seq.insert(seq.end(), sb.begin(), sb.end());
	Rat pre = Rat(1) / Rat(mono_fact(a) * mono_fact(b));
	std::map<Mono, Rat> out;
	for (auto &[m, v] : straighten(seq))
		add_term(out, m, pre * v * Rat(mono_fact(m)));
	return mulmemo_.emplace(key, std::move(out)).first->second;
}

EnvElement TruncCtx::mul(const EnvElement &a, const EnvElement &b)
{
	EnvElement r;
	for (auto &[ma, ca] : a.terms)
	{
		int ha = height(ma);
		for (auto &[mb, cb] : b.terms)
		{
			if (ha + height(mb) > N_)
				continue;
			if (ma.empty())
				add_term(r.terms, mb, ca * cb);
			else if (mb.empty())
				add_term(r.terms, ma, ca * cb);
			else
				for (auto &[m, v] : mul_mono(ma, mb))
					add_term(r.terms, m, ca * cb * v);
		}
	}
	normalize(r);
	return r;
}

EnvElement TruncCtx::power(const EnvElement &a, long n)
{
	if (n < 0)
		return power(antipode(a), -n);
	EnvElement r = one(), b = a;
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

Tensor TruncCtx::coproduct(const EnvElement &u) const
{
	Tensor t;
	for (auto &[m, c] : u.terms)
	{
		// split every exponent k into i + (k - i)
		std::vector<int> split(m.size(), 0);
		for (;;)
		{
			Mono l, r;
			for (size_t s = 0; s < m.size(); ++s)
			{
				if (split[s])
					l.push_back({m[s].first, split[s]});
				if (m[s].second - split[s])
					r.push_back({m[s].first, m[s].second - split[s]});
			}
			Rat &slot = t[{l, r}];
			slot = S_.norm(slot + c);
			if (slot == 0)
				t.erase({l, r});
			size_t s = 0;
			while (s < m.size() && split[s] == m[s].second)
				split[s++] = 0;
			if (s == m.size())
				break;
			split[s]++;
		}
	}
	return t;
}

Tensor TruncCtx::tensor(const EnvElement &a, const EnvElement &b) const
{
	Tensor t;
	for (auto &[ma, ca] : a.terms)
		for (auto &[mb, cb] : b.terms)
		{
			if (height(ma) + height(mb) > N_)
				continue;
			Rat v = S_.norm(ca * cb);
			if (v != 0)
				t[{ma, mb}] = v;
		}
	return t;
}

Tensor TruncCtx::tensor_mul(const Tensor &a, const Tensor &b)
{
	Tensor t;
	for (auto &[pa, ca] : a)
		for (auto &[pb, cb] : b)
		{
			if (height(pa.first) + height(pa.second) + height(pb.first) + height(pb.second) > N_)
				continue;
			EnvElement l = mul(mono(pa.first), mono(pb.first));
			EnvElement r = mul(mono(pa.second), mono(pb.second));
			for (auto &[ml, vl] : l.terms)
				for (auto &[mr, vr] : r.terms)
				{
					Rat &slot = t[{ml, mr}];
					slot = S_.norm(slot + ca * cb * vl * vr);
					if (slot == 0)
						t.erase({ml, mr});
				}
		}
	return t;
}

EnvElement TruncCtx::antipode(const EnvElement &u)
{
	EnvElement r;
	for (auto &[m, c] : u.terms)
	{
		EnvElement acc = one();
		for (auto it = m.rbegin(); it != m.rend(); ++it)
			acc = mul(acc, mono(Mono{*it}, (it->second % 2) ? -1 : 1));
		r = add(r, scale(c, acc));
	}
	return r;
}

EnvElement TruncCtx::mul_tensor(const Tensor &t, bool antipode_left)
{
	EnvElement r;
	for (auto &[pr, c] : t)
	{
		EnvElement l = mono(pr.first);
		if (antipode_left)
			l = antipode(l);
		r = add(r, scale(c, mul(l, mono(pr.second))));
	}
	return r;
}

bool TruncCtx::is_grouplike(const EnvElement &g)
{
	if (S_.norm(g.constant()) != 1)
		return false;
	return coproduct(g) == tensor(g, g);
}

EnvElement TruncCtx::twisted_exp(const LieElement &x, const Rat &lambda)
{
	EnvElement X = scale(lambda, from_lie(x));
	EnvElement acc = one(), t = one();
	for (int n = 1; n <= N_; ++n)
	{
		t = scale(Rat(1, n), mul(t, X));
		if (t.terms.empty())
			break;
		acc = add(acc, t);
	}
	return acc;
}

std::vector<Rat> TruncCtx::normal_form(const EnvElement &g0)
{
	if (!is_grouplike(g0))
		throw Error("NotGroupLike", "normal form needs a group-like element");
	EnvElement g = g0;
	std::vector<Rat> lambda(num_basis(), 0);
	int id = 0;
	for (int h = 1; h <= N_; ++h)
	{
		int start = id;
		while (id < num_basis() && kmforge::height(ids_[id].first) == h)
		{
			auto it = g.terms.find(Mono{{id, 1}});
			lambda[id] = it == g.terms.end() ? Rat(0) : it->second;
			++id;
		}
		for (int t = start; t < id; ++t)
			if (lambda[t] != 0)
				g = mul(twisted_exp(band_->basis_element(ids_[t].first, ids_[t].second), -lambda[t]), g);
	}
	if (!(g == one()))
		throw Error("Internal", "peeling did not reach the identity");
	return lambda;
}

EnvElement TruncCtx::from_coords(const std::vector<Rat> &lambda)
{
	if ((int)lambda.size() != num_basis())
		throw Error("InvalidInput", "coordinate vector has the wrong length");
	EnvElement g = one();
	for (int id = 0; id < num_basis(); ++id)
		if (S_.norm(lambda[id]) != 0)
			g = mul(g, twisted_exp(band_->basis_element(ids_[id].first, ids_[id].second), lambda[id]));
	return g;
}

EnvElement TruncCtx::s_i_star(int i, const EnvElement &u)
{
	int r = gcm().rank();
	RootVec ai = simple_root(r, i);
	EnvElement out;
	for (auto &[m, c] : u.terms)
	{
		RootVec img(r, 0);
		for (auto &[id, k] : m)
		{
			if (ids_[id].first == ai)
				throw Error("UnsupportedDegree", "the element has a factor in degree " + root_str(ai));
			img = kmforge::add(img, kmforge::scale(reflect_root(gcm(), i, ids_[id].first), k));
		}
		if (kmforge::height(img) > N_)
			continue;
		EnvElement acc = one();
		for (auto &[id, k] : m)
		{
			LieElement x;
			{
				std::lock_guard<std::recursive_mutex> lk(mu_);
				auto it = sstar_.find({i, id});
				if (it == sstar_.end())
					it = sstar_.emplace(std::make_pair(i, id),
					                    band_->s_i_star(i, band_->basis_element(ids_[id].first, ids_[id].second)))
					         .first;
				x = it->second;
			}
			EnvElement X = from_lie(x);
			acc = mul(acc, scale(Rat(1) / Rat(factorial(k)), power(X, k)));
		}
		out = add(out, scale(c, acc));
	}
	return out;
}

bool TruncCtx::restrict_to(const std::vector<RootVec> &psi, const EnvElement &u)
{
	RootTable t = enumerate_roots(*band_, N_);
	if (!is_closed_set(t, psi).value)
		throw Error("NotClosed", "the root set is not closed");
	std::set<RootVec> span;
	std::vector<RootVec> frontier(psi.begin(), psi.end());
	for (auto &a : psi)
		span.insert(a);
	while (!frontier.empty())
	{
		std::vector<RootVec> next;
		for (auto &a : frontier)
			for (auto &b : psi)
			{
				RootVec c = kmforge::add(a, b);
				if (kmforge::height(c) <= N_ && span.insert(c).second)
					next.push_back(c);
			}
		frontier = next;
	}
	for (auto &[m, c] : u.terms)
		for (auto &[id, k] : m)
			if (!span.count(ids_[id].first))
				return false;
	return true;
}

} // namespace kmforge
