#pragma once
// Coordinates of GF(q^d) over a subfield GF(q).

#include <cstdint>
#include <vector>

#include "xtrellis/field.hpp"
#include "xtrellis/matrix.hpp"

namespace xtrellis {

/// GF(q)-linear bijection GF(q)^d <-> GF(q^d).
///
/// The extension is built as GF(p^{e d}) with its canonical modulus. The base
/// field is identified with the subfield of order q through a root of the base
/// modulus, and the basis is 1, g, ..., g^{d-1} for the extension's primitive
/// element g, which has degree d over every subfield.
class FieldEmbedding {
 public:
  static FieldEmbedding make(FieldPtr base, std::uint32_t d) {
    require(d >= 1, ErrorKind::PreconditionViolated, "embedding degree must be >= 1");
    FieldEmbedding emb;
    emb.base_ = base;
    emb.d_ = d;
    if (d == 1) {
      emb.ext_ = base;
      emb.sub_.resize(base->q());
      for (Elem a = 0; a < base->q(); ++a) emb.sub_[a] = a;
      emb.basis_ = {1};
    } else {
      emb.ext_ = Field::make(base->p(), base->e() * d);
      emb.sub_ = subfield_map(*base, *emb.ext_);
      const Field& ext = *emb.ext_;
      Elem g = 1;
      for (std::uint32_t i = 0; i < d; ++i) {
        emb.basis_.push_back(g);
        g = ext.mul(g, ext.primitive());
      }
    }
    emb.back_.assign(emb.ext_->q(), UINT32_MAX);
    const std::uint64_t total = emb.ext_->q();
    Vec v(d, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t x = idx;
      for (std::uint32_t i = 0; i < d; ++i) {
        v[i] = static_cast<Elem>(x % base->q());
        x /= base->q();
      }
      const Elem y = emb.forward(v);
      require(emb.back_[y] == UINT32_MAX, ErrorKind::PreconditionViolated, "embedding basis is dependent");
      emb.back_[y] = static_cast<std::uint32_t>(idx);
    }
    return emb;
  }

  const FieldPtr& base() const noexcept { return base_; }
  const FieldPtr& ext() const noexcept { return ext_; }
  std::uint32_t degree() const noexcept { return d_; }
  const std::vector<Elem>& basis() const noexcept { return basis_; }

  /// Image of a base-field element inside the extension.
  Elem lift(Elem a) const { return sub_.at(a); }

  Elem forward(std::span<const Elem> coords) const {
    require(coords.size() == d_, ErrorKind::LengthMismatch, "embedding coordinate length");
    const Field& ext = *ext_;
    Elem acc = 0;
    for (std::uint32_t i = 0; i < d_; ++i) acc = ext.add(acc, ext.mul(sub_[coords[i]], basis_[i]));
    return acc;
  }

  Vec backward(Elem y) const {
    std::uint64_t idx = back_.at(y);
    Vec v(d_, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
      v[i] = static_cast<Elem>(idx % base_->q());
      idx /= base_->q();
    }
    return v;
  }

 private:
  // Field isomorphism from `base` onto the order-q subfield of `ext`, sending
  // the base generator x to a root of the base modulus.
  static std::vector<Elem> subfield_map(const Field& base, const Field& ext) {
    const auto& mod = base.modulus();
    auto eval = [&](const std::vector<std::uint32_t>& poly, Elem at) {
      Elem acc = 0;
      for (std::size_t i = poly.size(); i-- > 0;) {
        // Prime-field coefficients embed as integer multiples of 1.
        Elem c = 0;
        for (std::uint32_t t = 0; t < poly[i]; ++t) c = ext.add(c, 1);
        acc = ext.add(ext.mul(acc, at), c);
      }
      return acc;
    };
    Elem root = 0;
    bool found = false;
    for (Elem cand = 0; cand < ext.q() && !found; ++cand)
      if (eval(mod, cand) == 0) {
        root = cand;
        found = true;
      }
    require(found, ErrorKind::PreconditionViolated, "base modulus has no root in extension");
    std::vector<Elem> map(base.q());
    for (Elem a = 0; a < base.q(); ++a) map[a] = eval(base.digits(a), root);
    return map;
  }

  FieldPtr base_, ext_;
  std::uint32_t d_ = 1;
  std::vector<Elem> sub_;
  std::vector<Elem> basis_;
  std::vector<std::uint32_t> back_;
};

}  // namespace xtrellis
