// Copyright 2026 The VulnLens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vulnlens/tensor/ops.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "vulnlens/common/error.h"

namespace vulnlens::tensor {
namespace {

Tape& SameTape(Var a, Var b) {
  if (a.tape == nullptr || a.tape != b.tape) throw ShapeError("operands live on different tapes");
  return *a.tape;
}

template <typename Fwd, typename Deriv>
Var Elementwise(Var a, Fwd fwd, Deriv deriv) {
  Tape& tape = *a.tape;
  const Tensor& x = a.value();
  Tensor out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = fwd(x[i]);
  const int ia = a.id;
  return tape.Record(std::move(out), {ia}, [ia, deriv](Tape& t, const Tensor& up) {
    const Tensor& xv = t.value(ia);
    Tensor g(xv.rows(), xv.cols());
    for (std::size_t i = 0; i < xv.size(); ++i) g[i] = up[i] * deriv(xv[i]);
    t.AddGrad(ia, g);
  });
}

Tensor TransposePlain(const Tensor& a) {
  Tensor out(a.cols(), a.rows());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  }
  return out;
}

}  // namespace

Var MatMul(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  Tensor out = MatMulPlain(a.value(), b.value());
  const int ia = a.id, ib = b.id;
  return tape.Record(std::move(out), {ia, ib}, [ia, ib](Tape& t, const Tensor& up) {
    if (t.needs_grad(ia)) t.AddGrad(ia, MatMulPlain(up, TransposePlain(t.value(ib))));
    if (t.needs_grad(ib)) t.AddGrad(ib, MatMulPlain(TransposePlain(t.value(ia)), up));
  });
}

Var Transpose(Var a) {
  const int ia = a.id;
  return a.tape->Record(TransposePlain(a.value()), {ia}, [ia](Tape& t, const Tensor& up) {
    t.AddGrad(ia, TransposePlain(up));
  });
}

Var Add(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  Tensor out = Add(a.value(), b.value());
  const int ia = a.id, ib = b.id;
  return tape.Record(std::move(out), {ia, ib}, [ia, ib](Tape& t, const Tensor& up) {
    t.AddGrad(ia, up);
    t.AddGrad(ib, up);
  });
}

Var Sub(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  Tensor out = Sub(a.value(), b.value());
  const int ia = a.id, ib = b.id;
  return tape.Record(std::move(out), {ia, ib}, [ia, ib](Tape& t, const Tensor& up) {
    t.AddGrad(ia, up);
    t.AddGrad(ib, Scaled(up, -1.0));
  });
}

Var Mul(Var a, Var b) {
  Tape& tape = SameTape(a, b);
  CheckSameShape(a.value(), b.value(), "mul");
  Tensor out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b.value()[i];
  const int ia = a.id, ib = b.id;
  return tape.Record(std::move(out), {ia, ib}, [ia, ib](Tape& t, const Tensor& up) {
    const Tensor& av = t.value(ia);
    const Tensor& bv = t.value(ib);
    if (t.needs_grad(ia)) {
      Tensor g = up;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] *= bv[i];
      t.AddGrad(ia, g);
    }
    if (t.needs_grad(ib)) {
      Tensor g = up;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] *= av[i];
      t.AddGrad(ib, g);
    }
  });
}

Var Scale(Var a, double factor) {
  const int ia = a.id;
  return a.tape->Record(Scaled(a.value(), factor), {ia}, [ia, factor](Tape& t, const Tensor& up) {
    t.AddGrad(ia, Scaled(up, factor));
  });
}

Var AddScalar(Var a, double value) {
  Tensor out = a.value();
  for (double& x : out.data()) x += value;
  const int ia = a.id;
  return a.tape->Record(std::move(out), {ia},
                        [ia](Tape& t, const Tensor& up) { t.AddGrad(ia, up); });
}

Var OneMinus(Var a) { return AddScalar(Scale(a, -1.0), 1.0); }

Var AddRow(Var a, Var row) {
  Tape& tape = SameTape(a, row);
  const Tensor& x = a.value();
  const Tensor& r = row.value();
  if (r.rows() != 1 || r.cols() != x.cols()) {
    throw ShapeError("add_row: " + r.ShapeString() + " onto " + x.ShapeString());
  }
  Tensor out = x;
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) out(i, j) += r(0, j);
  }
  const int ia = a.id, ir = row.id;
  return tape.Record(std::move(out), {ia, ir}, [ia, ir](Tape& t, const Tensor& up) {
    t.AddGrad(ia, up);
    if (t.needs_grad(ir)) {
      Tensor g(1, up.cols());
      for (int i = 0; i < up.rows(); ++i) {
        for (int j = 0; j < up.cols(); ++j) g(0, j) += up(i, j);
      }
      t.AddGrad(ir, g);
    }
  });
}

Var Sigmoid(Var a) {
  auto sig = [](double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
  };
  return Elementwise(a, sig, [sig](double x) {
    const double s = sig(x);
    return s * (1.0 - s);
  });
}

Var Relu(Var a) {
  return Elementwise(
      a, [](double x) { return x > 0 ? x : 0.0; }, [](double x) { return x > 0 ? 1.0 : 0.0; });
}

Var Tanh(Var a) {
  return Elementwise(
      a, [](double x) { return std::tanh(x); },
      [](double x) {
        const double y = std::tanh(x);
        return 1.0 - y * y;
      });
}

Var Exp(Var a) {
  return Elementwise(
      a, [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); });
}

Var Log(Var a) {
  for (double x : a.value().data()) {
    if (!(x > 0)) throw NonFiniteError("log of non-positive value " + std::to_string(x));
  }
  return Elementwise(
      a, [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; });
}

Var Sum(Var a) {
  double s = 0.0;
  for (double x : a.value().data()) s += x;
  const int ia = a.id;
  return a.tape->Record(Tensor::Scalar(s), {ia}, [ia](Tape& t, const Tensor& up) {
    const Tensor& x = t.value(ia);
    t.AddGrad(ia, Tensor(x.rows(), x.cols(), up[0]));
  });
}

Var Mean(Var a) {
  const std::size_t n = a.value().size();
  if (n == 0) throw ShapeError("mean of an empty tensor");
  return Scale(Sum(a), 1.0 / static_cast<double>(n));
}

Var L1Norm(Var a) {
  double s = 0.0;
  for (double x : a.value().data()) s += std::abs(x);
  const int ia = a.id;
  return a.tape->Record(Tensor::Scalar(s), {ia}, [ia](Tape& t, const Tensor& up) {
    const Tensor& x = t.value(ia);
    Tensor g(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] > 0 ? up[0] : (x[i] < 0 ? -up[0] : 0.0);
    t.AddGrad(ia, g);
  });
}

Var RowL2Normalize(Var a, double eps) {
  const Tensor& x = a.value();
  Tensor out(x.rows(), x.cols());
  std::vector<double> norms(static_cast<std::size_t>(x.rows()));
  for (int r = 0; r < x.rows(); ++r) {
    double s = 0.0;
    for (int c = 0; c < x.cols(); ++c) s += x(r, c) * x(r, c);
    norms[r] = std::max(std::sqrt(s), eps);
    for (int c = 0; c < x.cols(); ++c) out(r, c) = x(r, c) / norms[r];
  }
  const int ia = a.id;
  return a.tape->Record(std::move(out), {ia}, [ia, norms, eps](Tape& t, const Tensor& up) {
    const Tensor& xv = t.value(ia);
    Tensor g(xv.rows(), xv.cols());
    for (int r = 0; r < xv.rows(); ++r) {
      const double n = norms[r];
      if (n <= eps) {
        // Clamped branch: y = x / eps is linear.
        for (int c = 0; c < xv.cols(); ++c) g(r, c) = up(r, c) / n;
        continue;
      }
      double dot = 0.0;
      for (int c = 0; c < xv.cols(); ++c) dot += up(r, c) * xv(r, c);
      for (int c = 0; c < xv.cols(); ++c) {
        g(r, c) = up(r, c) / n - xv(r, c) * dot / (n * n * n);
      }
    }
    t.AddGrad(ia, g);
  });
}

Var RowStochastic(Var a) {
  const Tensor& x = a.value();
  Tensor out(x.rows(), x.cols());
  std::vector<double> sums(static_cast<std::size_t>(x.rows()));
  for (int r = 0; r < x.rows(); ++r) {
    double s = 0.0;
    for (int c = 0; c < x.cols(); ++c) s += x(r, c);
    if (!(s > 0)) throw NonFiniteError("row " + std::to_string(r) + " has non-positive sum");
    sums[r] = s;
    for (int c = 0; c < x.cols(); ++c) out(r, c) = x(r, c) / s;
  }
  const int ia = a.id;
  return a.tape->Record(std::move(out), {ia}, [ia, sums](Tape& t, const Tensor& up) {
    const Tensor& xv = t.value(ia);
    Tensor g(xv.rows(), xv.cols());
    for (int r = 0; r < xv.rows(); ++r) {
      const double s = sums[r];
      double dot = 0.0;
      for (int c = 0; c < xv.cols(); ++c) dot += up(r, c) * xv(r, c);
      for (int c = 0; c < xv.cols(); ++c) g(r, c) = up(r, c) / s - dot / (s * s);
    }
    t.AddGrad(ia, g);
  });
}

Var MaskedLogSoftmax(Var logits, const Tensor& mask) {
  const Tensor& x = logits.value();
  CheckSameShape(x, mask, "masked_log_softmax");
  Tensor out(x.rows(), x.cols());
  Tensor probs(x.rows(), x.cols());
  for (int r = 0; r < x.rows(); ++r) {
    double m = -INFINITY;
    for (int c = 0; c < x.cols(); ++c) {
      if (mask(r, c) != 0) m = std::max(m, x(r, c));
    }
    if (m == -INFINITY) throw ShapeError("masked_log_softmax: row " + std::to_string(r) + " fully masked");
    double s = 0.0;
    for (int c = 0; c < x.cols(); ++c) {
      if (mask(r, c) != 0) s += std::exp(x(r, c) - m);
    }
    const double lse = m + std::log(s);
    for (int c = 0; c < x.cols(); ++c) {
      if (mask(r, c) == 0) continue;
      out(r, c) = x(r, c) - lse;
      probs(r, c) = std::exp(out(r, c));
    }
  }
  const int ia = logits.id;
  return logits.tape->Record(std::move(out), {ia}, [ia, probs, mask](Tape& t, const Tensor& up) {
    Tensor g(probs.rows(), probs.cols());
    for (int r = 0; r < probs.rows(); ++r) {
      double total = 0.0;
      for (int c = 0; c < probs.cols(); ++c) {
        if (mask(r, c) != 0) total += up(r, c);
      }
      for (int c = 0; c < probs.cols(); ++c) {
        if (mask(r, c) != 0) g(r, c) = up(r, c) - probs(r, c) * total;
      }
    }
    t.AddGrad(ia, g);
  });
}

Var LogSoftmax(Var logits) {
  return MaskedLogSoftmax(logits, Tensor(logits.rows(), logits.cols(), 1.0));
}

Var MeanPoolRows(Var a) {
  const Tensor& x = a.value();
  if (x.rows() == 0) throw ShapeError("mean pool over zero rows");
  Tensor out(1, x.cols());
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = 0; c < x.cols(); ++c) out(0, c) += x(r, c);
  }
  for (int c = 0; c < x.cols(); ++c) out(0, c) /= x.rows();
  const int ia = a.id;
  return a.tape->Record(std::move(out), {ia}, [ia](Tape& t, const Tensor& up) {
    const Tensor& xv = t.value(ia);
    Tensor g(xv.rows(), xv.cols());
    for (int r = 0; r < xv.rows(); ++r) {
      for (int c = 0; c < xv.cols(); ++c) g(r, c) = up(0, c) / xv.rows();
    }
    t.AddGrad(ia, g);
  });
}

Var MaxPoolRows(Var a) {
  const Tensor& x = a.value();
  if (x.rows() == 0) throw ShapeError("max pool over zero rows");
  Tensor out(1, x.cols());
  std::vector<int> argmax(static_cast<std::size_t>(x.cols()), 0);
  for (int c = 0; c < x.cols(); ++c) {
    out(0, c) = x(0, c);
    for (int r = 1; r < x.rows(); ++r) {
      if (x(r, c) > out(0, c)) {
        out(0, c) = x(r, c);
        argmax[c] = r;
      }
    }
  }
  const int ia = a.id;
  return a.tape->Record(std::move(out), {ia}, [ia, argmax](Tape& t, const Tensor& up) {
    const Tensor& xv = t.value(ia);
    Tensor g(xv.rows(), xv.cols());
    for (int c = 0; c < xv.cols(); ++c) g(argmax[c], c) = up(0, c);
    t.AddGrad(ia, g);
  });
}

Var ConcatCols(const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat of nothing");
  Tape& tape = *parts[0].tape;
  const int rows = parts[0].rows();
  int cols = 0;
  std::vector<int> ids, offsets;
  for (Var p : parts) {
    SameTape(parts[0], p);
    if (p.rows() != rows) throw ShapeError("concat_cols: row counts differ");
    ids.push_back(p.id);
    offsets.push_back(cols);
    cols += p.cols();
  }
  Tensor out(rows, cols);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Tensor& v = parts[k].value();
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < v.cols(); ++c) out(r, offsets[k] + c) = v(r, c);
    }
  }
  return tape.Record(std::move(out), ids, [ids, offsets](Tape& t, const Tensor& up) {
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!t.needs_grad(ids[k])) continue;
      const Tensor& v = t.value(ids[k]);
      Tensor g(v.rows(), v.cols());
      for (int r = 0; r < v.rows(); ++r) {
        for (int c = 0; c < v.cols(); ++c) g(r, c) = up(r, offsets[k] + c);
      }
      t.AddGrad(ids[k], g);
    }
  });
}

Var ConcatRows(const std::vector<Var>& parts) {
  if (parts.empty()) throw ShapeError("concat of nothing");
  Tape& tape = *parts[0].tape;
  const int cols = parts[0].cols();
  int rows = 0;
  std::vector<int> ids, offsets;
  for (Var p : parts) {
    SameTape(parts[0], p);
    if (p.cols() != cols) throw ShapeError("concat_rows: column counts differ");
    ids.push_back(p.id);
    offsets.push_back(rows);
    rows += p.rows();
  }
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(rows) * cols);
  for (Var p : parts) data.insert(data.end(), p.value().data().begin(), p.value().data().end());
  return tape.Record(Tensor(rows, cols, std::move(data)), ids,
                     [ids, offsets](Tape& t, const Tensor& up) {
                       for (std::size_t k = 0; k < ids.size(); ++k) {
                         if (!t.needs_grad(ids[k])) continue;
                         const Tensor& v = t.value(ids[k]);
                         const auto begin = up.data().begin() +
                                            static_cast<std::ptrdiff_t>(offsets[k]) * up.cols();
                         t.AddGrad(ids[k], Tensor(v.rows(), v.cols(),
                                                  std::vector<double>(begin, begin + v.size())));
                       }
                     });
}

Var SliceRows(Var a, int begin, int end) {
  const Tensor& x = a.value();
  if (begin < 0 || end > x.rows() || begin > end) {
    throw ShapeError("slice_rows [" + std::to_string(begin) + ", " + std::to_string(end) +
                     ") of " + x.ShapeString());
  }
  const auto first = x.data().begin() + static_cast<std::ptrdiff_t>(begin) * x.cols();
  const auto last = x.data().begin() + static_cast<std::ptrdiff_t>(end) * x.cols();
  const int ia = a.id;
  return a.tape->Record(Tensor(end - begin, x.cols(), std::vector<double>(first, last)), {ia},
                        [ia, begin](Tape& t, const Tensor& up) {
                          const Tensor& xv = t.value(ia);
                          Tensor g(xv.rows(), xv.cols());
                          std::copy(up.data().begin(), up.data().end(),
                                    g.data().begin() + static_cast<std::ptrdiff_t>(begin) * xv.cols());
                          t.AddGrad(ia, g);
                        });
}

Var Pick(Var a, int row, int col) {
  const Tensor& x = a.value();
  if (row < 0 || row >= x.rows() || col < 0 || col >= x.cols()) {
    throw ShapeError("pick out of range on " + x.ShapeString());
  }
  const int ia = a.id;
  return a.tape->Record(Tensor::Scalar(x(row, col)), {ia}, [ia, row, col](Tape& t, const Tensor& up) {
    const Tensor& xv = t.value(ia);
    Tensor g(xv.rows(), xv.cols());
    g(row, col) = up[0];
    t.AddGrad(ia, g);
  });
}

Var ScatterEdges(Var edge_values, const std::vector<int>& src, const std::vector<int>& dst,
                 int num_nodes, bool symmetric) {
  const Tensor& e = edge_values.value();
  if (e.cols() != 1 || e.rows() != static_cast<int>(src.size()) || src.size() != dst.size()) {
    throw ShapeError("scatter_edges: " + e.ShapeString() + " values for " +
                     std::to_string(src.size()) + " edges");
  }
  Tensor out(num_nodes, num_nodes);
  for (std::size_t k = 0; k < src.size(); ++k) {
    if (src[k] < 0 || src[k] >= num_nodes || dst[k] < 0 || dst[k] >= num_nodes) {
      throw ShapeError("scatter_edges: endpoint out of range");
    }
    out(src[k], dst[k]) += e[k];
    if (symmetric) out(dst[k], src[k]) += e[k];
  }
  const int ia = edge_values.id;
  return edge_values.tape->Record(
      std::move(out), {ia}, [ia, src, dst, symmetric](Tape& t, const Tensor& up) {
        Tensor g(static_cast<int>(src.size()), 1);
        for (std::size_t k = 0; k < src.size(); ++k) {
          g[k] = up(src[k], dst[k]) + (symmetric ? up(dst[k], src[k]) : 0.0);
        }
        t.AddGrad(ia, g);
      });
}

}  // namespace vulnlens::tensor
