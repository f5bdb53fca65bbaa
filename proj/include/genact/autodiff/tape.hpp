#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "genact/core/error.hpp"
#include "genact/core/tensor.hpp"

namespace genact::autodiff {

// Reverse-mode tape over dense 2-d tensors (rows x cols). A fresh tape is
// built per forward pass; backward() walks the node list in reverse.
// Instantiated with float for training and double for the finite-difference
// oracles, so both paths share one implementation.
template <typename T>
class Tape {
 public:
  using Id = int;
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using MapM = Eigen::Map<Mat>;
  using CMapM = Eigen::Map<const Mat>;

  struct Node {
    Tensor<T> val;
    Tensor<T> grad;
    std::function<void(Tape&)> back;  // empty for leaves
  };

  Id leaf(Tensor<T> value) {
    nodes_.push_back(Node{std::move(value), {}, {}});
    return static_cast<Id>(nodes_.size()) - 1;
  }

  const Tensor<T>& val(Id id) const { return nodes_[static_cast<size_t>(id)].val; }
  const Tensor<T>& grad(Id id) const { return nodes_[static_cast<size_t>(id)].grad; }

  int rows(Id id) const { return val(id).shape[0]; }
  int cols(Id id) const { return val(id).shape[1]; }

  // ---- elementwise / linear algebra ops -----------------------------------

  Id add(Id a, Id b) {
    check2d(a);
    if (val(a).shape != val(b).shape) raise(ErrorCode::ShapeError, "add: shape mismatch");
    Tensor<T> out = val(a);
    for (int64_t i = 0; i < out.numel(); ++i) out.data[i] += val(b).data[i];
    return record(std::move(out), [a, b](Tape& t) {
      Id y = t.current_;
      t.accumulate(a, t.grad(y).data);
      t.accumulate(b, t.grad(y).data);
    });
  }

  // x: [n, d], bias: [1, d] broadcast over rows
  Id add_bias(Id x, Id bias) {
    check2d(x);
    int n = rows(x), d = cols(x);
    if (val(bias).shape[0] != 1 || val(bias).shape[1] != d)
      raise(ErrorCode::ShapeError, "add_bias: bias shape");
    Tensor<T> out = val(x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) out.at(i, j) += val(bias).at(0, j);
    return record(std::move(out), [x, bias, n, d](Tape& t) {
      Id y = t.current_;
      t.accumulate(x, t.grad(y).data);
      auto& gb = t.grad_ref(bias);
      const auto& gy = t.grad(y);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) gb.at(0, j) += gy.at(i, j);
    });
  }

  // x: [n*seg_len, d], e: [max_segments, d]; row i receives e[i / seg_len].
  // Used for temporal position embeddings over flattened frame tokens.
  Id add_segment_rows(Id x, Id e, int seg_len) {
    int n = rows(x), d = cols(x);
    Tensor<T> out = val(x);
    for (int i = 0; i < n; ++i) {
      int s = i / seg_len;
      for (int j = 0; j < d; ++j) out.at(i, j) += val(e).at(s, j);
    }
    return record(std::move(out), [x, e, seg_len, n, d](Tape& t) {
      Id y = t.current_;
      t.accumulate(x, t.grad(y).data);
      auto& ge = t.grad_ref(e);
      const auto& gy = t.grad(y);
      for (int i = 0; i < n; ++i) {
        int s = i / seg_len;
        for (int j = 0; j < d; ++j) ge.at(s, j) += gy.at(i, j);
      }
    });
  }

  Id scale(Id a, T c) {
    Tensor<T> out = val(a);
    for (auto& v : out.data) v *= c;
    return record(std::move(out), [a, c](Tape& t) {
      Id y = t.current_;
      auto& ga = t.grad_ref(a);
      const auto& gy = t.grad(y);
      for (int64_t i = 0; i < gy.numel(); ++i) ga.data[i] += c * gy.data[i];
    });
  }

  // y = a + tanh(gate) * b, gate a 1x1 parameter. The gated-residual branch.
  Id gated_add(Id a, Id b, Id gate) {
    if (val(a).shape != val(b).shape) raise(ErrorCode::ShapeError, "gated_add shape");
    T g = std::tanh(val(gate).at(0, 0));
    Tensor<T> out = val(a);
    for (int64_t i = 0; i < out.numel(); ++i) out.data[i] += g * val(b).data[i];
    return record(std::move(out), [a, b, gate, g](Tape& t) {
      Id y = t.current_;
      const auto& gy = t.grad(y);
      t.accumulate(a, gy.data);
      auto& gb = t.grad_ref(b);
      T dgate = 0;
      const auto& bv = t.val(b);
      for (int64_t i = 0; i < gy.numel(); ++i) {
        gb.data[i] += g * gy.data[i];
        dgate += gy.data[i] * bv.data[i];
      }
      T raw = t.val(gate).at(0, 0);
      T sech2 = T(1) - std::tanh(raw) * std::tanh(raw);
      t.grad_ref(gate).at(0, 0) += dgate * sech2;
    });
  }

  Id matmul(Id a, Id b) {
    check2d(a);
    check2d(b);
    int m = rows(a), k = cols(a), n = cols(b);
    if (rows(b) != k) raise(ErrorCode::ShapeError, "matmul: inner dims");
    Tensor<T> out({m, n});
    MapM(out.data.data(), m, n) = CMapM(val(a).data.data(), m, k) * CMapM(val(b).data.data(), k, n);
    return record(std::move(out), [a, b, m, k, n](Tape& t) {
      Id y = t.current_;
      CMapM gy(t.grad(y).data.data(), m, n);
      CMapM av(t.val(a).data.data(), m, k);
      CMapM bv(t.val(b).data.data(), k, n);
      MapM(t.grad_ref(a).data.data(), m, k).noalias() += gy * bv.transpose();
      MapM(t.grad_ref(b).data.data(), k, n).noalias() += av.transpose() * gy;
    });
  }

  // C = A * B^T with A: [m,k], B: [n,k]
  Id matmul_nt(Id a, Id b) {
    int m = rows(a), k = cols(a), n = rows(b);
    if (cols(b) != k) raise(ErrorCode::ShapeError, "matmul_nt: inner dims");
    Tensor<T> out({m, n});
    MapM(out.data.data(), m, n) =
        CMapM(val(a).data.data(), m, k) * CMapM(val(b).data.data(), n, k).transpose();
    return record(std::move(out), [a, b, m, k, n](Tape& t) {
      Id y = t.current_;
      CMapM gy(t.grad(y).data.data(), m, n);
      CMapM av(t.val(a).data.data(), m, k);
      CMapM bv(t.val(b).data.data(), n, k);
      MapM(t.grad_ref(a).data.data(), m, k).noalias() += gy * bv;
      MapM(t.grad_ref(b).data.data(), n, k).noalias() += gy.transpose() * av;
    });
  }

  Id gelu(Id x) {
    // tanh approximation; smooth everywhere, which keeps the central
    // finite-difference oracle well conditioned.
    Tensor<T> out = val(x);
    for (auto& v : out.data) v = gelu_fwd(v);
    return record(std::move(out), [x](Tape& t) {
      Id y = t.current_;
      auto& gx = t.grad_ref(x);
      const auto& gy = t.grad(y);
      const auto& xv = t.val(x);
      for (int64_t i = 0; i < gy.numel(); ++i)
        gx.data[i] += gy.data[i] * gelu_bwd(xv.data[i]);
    });
  }

  Id layer_norm(Id x, Id gamma, Id beta, T eps = T(1e-5)) {
    check2d(x);
    int n = rows(x), d = cols(x);
    Tensor<T> out({n, d});
    Tensor<T> inv_std({n, 1});
    Tensor<T> xhat({n, d});
    for (int i = 0; i < n; ++i) {
      T mean = 0;
      for (int j = 0; j < d; ++j) mean += val(x).at(i, j);
      mean /= T(d);
      T var = 0;
      for (int j = 0; j < d; ++j) {
        T c = val(x).at(i, j) - mean;
        var += c * c;
      }
      var /= T(d);
      T is = T(1) / std::sqrt(var + eps);
      inv_std.at(i, 0) = is;
      for (int j = 0; j < d; ++j) {
        T xh = (val(x).at(i, j) - mean) * is;
        xhat.at(i, j) = xh;
        out.at(i, j) = xh * val(gamma).at(0, j) + val(beta).at(0, j);
      }
    }
    auto istd = std::make_shared<Tensor<T>>(std::move(inv_std));
    auto xh = std::make_shared<Tensor<T>>(std::move(xhat));
    return record(std::move(out), [x, gamma, beta, istd, xh, n, d](Tape& t) {
      Id y = t.current_;
      const auto& gy = t.grad(y);
      auto& gx = t.grad_ref(x);
      auto& gg = t.grad_ref(gamma);
      auto& gb = t.grad_ref(beta);
      for (int i = 0; i < n; ++i) {
        T sum_dy = 0, sum_dy_xh = 0;
        for (int j = 0; j < d; ++j) {
          T dy = gy.at(i, j) * t.val(gamma).at(0, j);
          sum_dy += dy;
          sum_dy_xh += dy * xh->at(i, j);
          gg.at(0, j) += gy.at(i, j) * xh->at(i, j);
          gb.at(0, j) += gy.at(i, j);
        }
        T is = istd->at(i, 0);
        for (int j = 0; j < d; ++j) {
          T dy = gy.at(i, j) * t.val(gamma).at(0, j);
          gx.at(i, j) += is * (dy - sum_dy / T(d) - xh->at(i, j) * sum_dy_xh / T(d));
        }
      }
    });
  }

  // Multi-head softmax attention. q: [nq, D], k/v: [nk, D], D % heads == 0.
  // Scores are scaled by 1/sqrt(head_dim). Stores per-head softmax for the
  // backward pass.
  Id attention(Id q, Id k, Id v, int heads) {
    int nq = rows(q), nk = rows(k), D = cols(q);
    if (cols(k) != D || cols(v) != D || rows(v) != nk || D % heads != 0)
      raise(ErrorCode::ShapeError, "attention: dims");
    int dh = D / heads;
    T scl = T(1) / std::sqrt(T(dh));
    Tensor<T> out({nq, D});
    auto probs = std::make_shared<std::vector<Mat>>();
    probs->reserve(static_cast<size_t>(heads));
    CMapM qm(val(q).data.data(), nq, D), km(val(k).data.data(), nk, D),
        vm(val(v).data.data(), nk, D);
    MapM om(out.data.data(), nq, D);
    for (int h = 0; h < heads; ++h) {
      Mat s = qm.middleCols(h * dh, dh) * km.middleCols(h * dh, dh).transpose() * scl;
      for (int i = 0; i < nq; ++i) {
        T mx = s.row(i).maxCoeff();
        for (int j = 0; j < nk; ++j) s(i, j) = std::exp(s(i, j) - mx);
        s.row(i) /= s.row(i).sum();
      }
      om.middleCols(h * dh, dh) = s * vm.middleCols(h * dh, dh);
      probs->push_back(std::move(s));
    }
    return record(std::move(out), [q, k, v, heads, dh, scl, nq, nk, probs](Tape& t) {
      Id y = t.current_;
      int D = heads * dh;
      CMapM gy(t.grad(y).data.data(), nq, D);
      CMapM qm(t.val(q).data.data(), nq, D), km(t.val(k).data.data(), nk, D),
          vm(t.val(v).data.data(), nk, D);
      MapM gq(t.grad_ref(q).data.data(), nq, D), gk(t.grad_ref(k).data.data(), nk, D),
          gv(t.grad_ref(v).data.data(), nk, D);
      for (int h = 0; h < heads; ++h) {
        const Mat& p = (*probs)[static_cast<size_t>(h)];
        Mat dOh = gy.middleCols(h * dh, dh);
        gv.middleCols(h * dh, dh).noalias() += p.transpose() * dOh;
        Mat dP = dOh * vm.middleCols(h * dh, dh).transpose();
        // softmax backward per row
        Mat dS(nq, nk);
        for (int i = 0; i < nq; ++i) {
          T dot = dP.row(i).dot(p.row(i));
          dS.row(i) = (dP.row(i).array() - dot).matrix().cwiseProduct(p.row(i)) * scl;
        }
        gq.middleCols(h * dh, dh).noalias() += dS * km.middleCols(h * dh, dh);
        gk.middleCols(h * dh, dh).noalias() += dS.transpose() * qm.middleCols(h * dh, dh);
      }
    });
  }

  Id concat_rows(Id a, Id b) {
    int d = cols(a);
    if (cols(b) != d) raise(ErrorCode::ShapeError, "concat_rows: width mismatch");
    int na = rows(a), nb = rows(b);
    Tensor<T> out({na + nb, d});
    std::copy(val(a).data.begin(), val(a).data.end(), out.data.begin());
    std::copy(val(b).data.begin(), val(b).data.end(),
              out.data.begin() + static_cast<int64_t>(na) * d);
    return record(std::move(out), [a, b, na, nb, d](Tape& t) {
      Id y = t.current_;
      const auto& gy = t.grad(y);
      auto& ga = t.grad_ref(a);
      auto& gb = t.grad_ref(b);
      for (int64_t i = 0; i < static_cast<int64_t>(na) * d; ++i) ga.data[i] += gy.data[i];
      for (int64_t i = 0; i < static_cast<int64_t>(nb) * d; ++i)
        gb.data[i] += gy.data[static_cast<int64_t>(na) * d + i];
    });
  }

  Id slice_rows(Id x, int row0, int nrows) {
    int d = cols(x);
    Tensor<T> out({nrows, d});
    std::copy(val(x).data.begin() + static_cast<int64_t>(row0) * d,
              val(x).data.begin() + static_cast<int64_t>(row0 + nrows) * d, out.data.begin());
    return record(std::move(out), [x, row0, nrows, d](Tape& t) {
      Id y = t.current_;
      const auto& gy = t.grad(y);
      auto& gx = t.grad_ref(x);
      for (int64_t i = 0; i < static_cast<int64_t>(nrows) * d; ++i)
        gx.data[static_cast<int64_t>(row0) * d + i] += gy.data[i];
    });
  }

  // Stops gradient flow; forward value passes through.
  Id detach(Id x) {
    Tensor<T> out = val(x);
    return record(std::move(out), {});
  }

  // Row-major reinterpretation; element count must match.
  Id reshape(Id x, int nrows, int ncols) {
    if (static_cast<int64_t>(nrows) * ncols != val(x).numel())
      raise(ErrorCode::ShapeError, "reshape: element count");
    Tensor<T> out({nrows, ncols});
    out.data = val(x).data;
    return record(std::move(out), [x](Tape& t) {
      Id y = t.current_;
      t.accumulate(x, t.grad(y).data);
    });
  }

  // Bilinear sample of a feature grid at fixed normalized points.
  // grid: [gr*gc, d] (row-major over cells), points: P x (x, y) in [0,1]^2.
  // Cell centers sit at ((c+0.5)/gc, (r+0.5)/gr); samples clamp to the grid.
  Id bilinear_sample(Id grid, int gr, int gc, const std::vector<std::pair<T, T>>& pts) {
    int d = cols(grid);
    int P = static_cast<int>(pts.size());
    Tensor<T> out({P, d});
    auto w = std::make_shared<std::vector<std::array<std::pair<int, T>, 4>>>();
    w->resize(static_cast<size_t>(P));
    for (int p = 0; p < P; ++p) {
      T gx = pts[static_cast<size_t>(p)].first * T(gc) - T(0.5);
      T gy = pts[static_cast<size_t>(p)].second * T(gr) - T(0.5);
      gx = std::min(std::max(gx, T(0)), T(gc - 1));
      gy = std::min(std::max(gy, T(0)), T(gr - 1));
      int c0 = std::min(static_cast<int>(gx), gc - 2 < 0 ? 0 : gc - 2);
      int r0 = std::min(static_cast<int>(gy), gr - 2 < 0 ? 0 : gr - 2);
      int c1 = std::min(c0 + 1, gc - 1);
      int r1 = std::min(r0 + 1, gr - 1);
      T fx = gx - T(c0), fy = gy - T(r0);
      std::array<std::pair<int, T>, 4> ws = {
          std::make_pair(r0 * gc + c0, (T(1) - fx) * (T(1) - fy)),
          std::make_pair(r0 * gc + c1, fx * (T(1) - fy)),
          std::make_pair(r1 * gc + c0, (T(1) - fx) * fy),
          std::make_pair(r1 * gc + c1, fx * fy)};
      (*w)[static_cast<size_t>(p)] = ws;
      for (int j = 0; j < d; ++j) {
        T acc = 0;
        for (auto& [cell, wt] : ws) acc += wt * val(grid).at(cell, j);
        out.at(p, j) = acc;
      }
    }
    return record(std::move(out), [grid, w, d, P](Tape& t) {
      Id y = t.current_;
      const auto& gy = t.grad(y);
      auto& gg = t.grad_ref(grid);
      for (int p = 0; p < P; ++p)
        for (auto& [cell, wt] : (*w)[static_cast<size_t>(p)])
          for (int j = 0; j < d; ++j) gg.at(cell, j) += wt * gy.at(p, j);
    });
  }

  // Clamp to [lo, hi]; gradient passes only strictly inside the interval.
  Id clamp(Id x, T lo, T hi) {
    Tensor<T> out = val(x);
    for (auto& v : out.data) v = std::min(std::max(v, lo), hi);
    return record(std::move(out), [x, lo, hi](Tape& t) {
      Id y = t.current_;
      const auto& gy = t.grad(y);
      const auto& xv = t.val(x);
      auto& gx = t.grad_ref(x);
      for (int64_t i = 0; i < gy.numel(); ++i)
        if (xv.data[i] > lo && xv.data[i] < hi) gx.data[i] += gy.data[i];
    });
  }

  // ---- scalar losses (all return 1x1 nodes) -------------------------------

  // Mean categorical cross-entropy from logits over rows.
  Id cross_entropy(Id logits, const std::vector<int>& targets) {
    int n = rows(logits), c = cols(logits);
    if (static_cast<int>(targets.size()) != n)
      raise(ErrorCode::ShapeError, "cross_entropy: target count");
    auto softmax = std::make_shared<Tensor<T>>(std::vector<int>{n, c});
    T loss = 0;
    for (int i = 0; i < n; ++i) {
      T mx = val(logits).at(i, 0);
      for (int j = 1; j < c; ++j) mx = std::max(mx, val(logits).at(i, j));
      T sum = 0;
      for (int j = 0; j < c; ++j) {
        T e = std::exp(val(logits).at(i, j) - mx);
        softmax->at(i, j) = e;
        sum += e;
      }
      for (int j = 0; j < c; ++j) softmax->at(i, j) /= sum;
      loss -= std::log(std::max(softmax->at(i, targets[static_cast<size_t>(i)]),
                                std::numeric_limits<T>::min()));
    }
    loss /= T(n);
    Tensor<T> out({1, 1});
    out.at(0, 0) = loss;
    auto tg = std::make_shared<std::vector<int>>(targets);
    return record(std::move(out), [logits, softmax, tg, n, c](Tape& t) {
      Id y = t.current_;
      T gy = t.grad(y).at(0, 0);
      auto& gl = t.grad_ref(logits);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < c; ++j) {
          T delta = (j == (*tg)[static_cast<size_t>(i)]) ? T(1) : T(0);
          gl.at(i, j) += gy * (softmax->at(i, j) - delta) / T(n);
        }
    });
  }

  // Visibility-masked mean Euclidean distance between predicted and target
  // coordinates. pred: [P*T, 2]; truth/visible flattened the same way.
  // Returns 0 when nothing is visible. The tiny eps keeps sqrt smooth at
  // exact hits without disturbing the stated loss values beyond 1e-10.
  Id masked_l2(Id pred, const std::vector<T>& truth, const std::vector<uint8_t>& visible) {
    int n = rows(pred);
    if (cols(pred) != 2 || static_cast<int>(truth.size()) != 2 * n ||
        static_cast<int>(visible.size()) != n)
      raise(ErrorCode::ShapeError, "masked_l2: shapes");
    constexpr T eps = T(1e-20);
    int nvis = 0;
    for (uint8_t v : visible) nvis += v ? 1 : 0;
    auto dist = std::make_shared<std::vector<T>>(static_cast<size_t>(n), T(0));
    T loss = 0;
    for (int i = 0; i < n; ++i) {
      if (!visible[static_cast<size_t>(i)]) continue;
      T dx = val(pred).at(i, 0) - truth[static_cast<size_t>(2 * i)];
      T dy = val(pred).at(i, 1) - truth[static_cast<size_t>(2 * i) + 1];
      T d = std::sqrt(dx * dx + dy * dy + eps);
      (*dist)[static_cast<size_t>(i)] = d;
      loss += d;
    }
    if (nvis > 0) loss /= T(nvis);
    Tensor<T> out({1, 1});
    out.at(0, 0) = loss;
    auto tr = std::make_shared<std::vector<T>>(truth);
    auto vis = std::make_shared<std::vector<uint8_t>>(visible);
    return record(std::move(out), [pred, tr, vis, dist, n, nvis](Tape& t) {
      if (nvis == 0) return;
      Id y = t.current_;
      T gy = t.grad(y).at(0, 0);
      auto& gp = t.grad_ref(pred);
      for (int i = 0; i < n; ++i) {
        if (!(*vis)[static_cast<size_t>(i)]) continue;
        T dx = t.val(pred).at(i, 0) - (*tr)[static_cast<size_t>(2 * i)];
        T dy = t.val(pred).at(i, 1) - (*tr)[static_cast<size_t>(2 * i) + 1];
        T d = (*dist)[static_cast<size_t>(i)];
        gp.at(i, 0) += gy * dx / (d * T(nvis));
        gp.at(i, 1) += gy * dy / (d * T(nvis));
      }
    });
  }

  // c0*a + c1*b for scalar (1x1) nodes.
  Id axpy_scalar(T c0, Id a, T c1, Id b) {
    Tensor<T> out({1, 1});
    out.at(0, 0) = c0 * val(a).at(0, 0) + c1 * val(b).at(0, 0);
    return record(std::move(out), [a, b, c0, c1](Tape& t) {
      Id y = t.current_;
      T gy = t.grad(y).at(0, 0);
      t.grad_ref(a).at(0, 0) += c0 * gy;
      t.grad_ref(b).at(0, 0) += c1 * gy;
    });
  }

  Id scalar_const(T v) {
    Tensor<T> out({1, 1});
    out.at(0, 0) = v;
    return leaf(std::move(out));
  }

  // ---- engine --------------------------------------------------------------

  void backward(Id loss) {
    for (auto& n : nodes_) {
      n.grad = Tensor<T>(n.val.shape);
    }
    nodes_[static_cast<size_t>(loss)].grad.data.assign(
        nodes_[static_cast<size_t>(loss)].grad.data.size(), T(1));
    for (Id i = loss; i >= 0; --i) {
      auto& node = nodes_[static_cast<size_t>(i)];
      if (node.back) {
        current_ = i;
        node.back(*this);
      }
    }
  }

  size_t size() const { return nodes_.size(); }

 private:
  Id record(Tensor<T> out, std::function<void(Tape&)> back) {
    nodes_.push_back(Node{std::move(out), {}, std::move(back)});
    return static_cast<Id>(nodes_.size()) - 1;
  }

  void check2d(Id id) const {
    if (val(id).rank() != 2) raise(ErrorCode::ShapeError, "expected 2-d tensor");
  }

  Tensor<T>& grad_ref(Id id) { return nodes_[static_cast<size_t>(id)].grad; }

  void accumulate(Id id, const std::vector<T>& g) {
    auto& dst = grad_ref(id).data;
    for (size_t i = 0; i < g.size(); ++i) dst[i] += g[i];
  }

  static T gelu_fwd(T x) {
    const T c = T(0.7978845608028654);  // sqrt(2/pi)
    T inner = c * (x + T(0.044715) * x * x * x);
    return T(0.5) * x * (T(1) + std::tanh(inner));
  }

  static T gelu_bwd(T x) {
    const T c = T(0.7978845608028654);
    T x3 = x * x * x;
    T inner = c * (x + T(0.044715) * x3);
    T th = std::tanh(inner);
    T sech2 = T(1) - th * th;
    return T(0.5) * (T(1) + th) + T(0.5) * x * sech2 * c * (T(1) + T(3) * T(0.044715) * x * x);
  }

  std::vector<Node> nodes_;
  Id current_ = -1;

  friend struct TapeTestAccess;
};

}  // namespace genact::autodiff
