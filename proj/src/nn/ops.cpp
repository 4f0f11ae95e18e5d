#include "alphafuse/nn/ops.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <string>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::nn::ops {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapC = Eigen::Map<const RowMat>;
using Map = Eigen::Map<RowMat>;

MapC view(const Tensor& t) { return MapC(t.data(), t.rows(), t.cols()); }
Map view(Tensor& t) { return Map(t.data(), t.rows(), t.cols()); }

[[noreturn]] void shape_error(const char* op, const std::string& detail) {
    throw StructuralError(std::string(op) + ": " + detail);
}

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        shape_error(op, "shapes " + a.shape_string() + " and " + b.shape_string() + " differ");
    }
}

template <class F>
Tensor map_values(const Tensor& x, F f) {
    Tensor out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
    return out;
}

}  // namespace

Var linear(Var x, Var W) {
    const Tensor& xv = x.value();
    const Tensor& wv = W.value();
    if (xv.cols() != wv.cols()) {
        shape_error("affine", "x is " + xv.shape_string() + " but W is " + wv.shape_string());
    }
    Tensor out(xv.rows(), wv.rows());
    view(out).noalias() = view(xv) * view(wv).transpose();
    return x.tape().record("linear", std::move(out), {x, W}, [x, W](Tape& tape, const Tensor& g) {
        if (tape.requires_grad(x)) {
            Tensor dx(x.rows(), x.cols());
            view(dx).noalias() = view(g) * view(W.value());
            tape.accumulate(x, dx);
        }
        if (tape.requires_grad(W)) {
            Tensor dw(W.rows(), W.cols());
            view(dw).noalias() = view(g).transpose() * view(x.value());
            tape.accumulate(W, dw);
        }
    });
}

Var affine(Var x, Var W, Var b) {
    const Tensor& wv = W.value();
    const Tensor& bv = b.value();
    if (bv.rows() != 1 || bv.cols() != wv.rows()) {
        shape_error("affine", "bias is " + bv.shape_string() + " but W is " + wv.shape_string());
    }
    Var xw = linear(x, W);
    Tensor out = xw.value();
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) += bv[c];
    }
    return x.tape().record("affine", std::move(out), {xw, b}, [xw, b](Tape& tape, const Tensor& g) {
        tape.accumulate(xw, g);
        if (tape.requires_grad(b)) {
            Tensor db(1, g.cols());
            for (std::size_t r = 0; r < g.rows(); ++r) {
                for (std::size_t c = 0; c < g.cols(); ++c) db[c] += g(r, c);
            }
            tape.accumulate(b, db);
        }
    });
}

Var relu(Var x) {
    Tensor out = map_values(x.value(), [](double v) { return v > 0.0 ? v : 0.0; });
    return x.tape().record("relu", std::move(out), {x}, [x](Tape& tape, const Tensor& g) {
        const Tensor& xv = x.value();
        Tensor dx(g.rows(), g.cols());
        for (std::size_t i = 0; i < g.size(); ++i) dx[i] = xv[i] > 0.0 ? g[i] : 0.0;
        tape.accumulate(x, dx);
    });
}

Var tanh(Var x) {
    Tensor out = map_values(x.value(), [](double v) { return std::tanh(v); });
    const std::size_t id = x.tape().size();
    return x.tape().record("tanh", std::move(out), {x}, [x, id](Tape& tape, const Tensor& g) {
        const Tensor& y = tape.value(id);
        Tensor dx(g.rows(), g.cols());
        for (std::size_t i = 0; i < g.size(); ++i) dx[i] = g[i] * (1.0 - y[i] * y[i]);
        tape.accumulate(x, dx);
    });
}

Var sigmoid(Var x) {
    Tensor out = map_values(x.value(), [](double v) {
        if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
        const double e = std::exp(v);
        return e / (1.0 + e);
    });
    const std::size_t id = x.tape().size();
    return x.tape().record("sigmoid", std::move(out), {x}, [x, id](Tape& tape, const Tensor& g) {
        const Tensor& y = tape.value(id);
        Tensor dx(g.rows(), g.cols());
        for (std::size_t i = 0; i < g.size(); ++i) dx[i] = g[i] * y[i] * (1.0 - y[i]);
        tape.accumulate(x, dx);
    });
}

Var softmax(Var x) {
    const Tensor& xv = x.value();
    if (xv.cols() == 0) shape_error("softmax", "empty rows");
    Tensor out(xv.rows(), xv.cols());
    for (std::size_t r = 0; r < xv.rows(); ++r) {
        double mx = xv(r, 0);
        for (std::size_t c = 1; c < xv.cols(); ++c) mx = std::max(mx, xv(r, c));
        double z = 0.0;
        for (std::size_t c = 0; c < xv.cols(); ++c) {
            out(r, c) = std::exp(xv(r, c) - mx);
            z += out(r, c);
        }
        for (std::size_t c = 0; c < xv.cols(); ++c) out(r, c) /= z;
    }
    const std::size_t id = x.tape().size();
    return x.tape().record("softmax", std::move(out), {x}, [x, id](Tape& tape, const Tensor& g) {
        const Tensor& y = tape.value(id);
        Tensor dx(g.rows(), g.cols());
        for (std::size_t r = 0; r < g.rows(); ++r) {
            double dot = 0.0;
            for (std::size_t c = 0; c < g.cols(); ++c) dot += g(r, c) * y(r, c);
            for (std::size_t c = 0; c < g.cols(); ++c) dx(r, c) = y(r, c) * (g(r, c) - dot);
        }
        tape.accumulate(x, dx);
    });
}

Var concat(const std::vector<Var>& parts) {
    if (parts.empty()) shape_error("concat", "no inputs");
    const std::size_t rows = parts.front().rows();
    std::size_t cols = 0;
    for (const Var& p : parts) {
        if (p.rows() != rows) {
            shape_error("concat", "row counts " + parts.front().value().shape_string() + " and " +
                                      p.value().shape_string() + " differ");
        }
        cols += p.cols();
    }
    Tensor out(rows, cols);
    std::size_t off = 0;
    for (const Var& p : parts) {
        const Tensor& v = p.value();
        for (std::size_t r = 0; r < rows; ++r) {
            std::copy_n(v.data() + r * v.cols(), v.cols(), out.data() + r * cols + off);
        }
        off += v.cols();
    }
    return parts.front().tape().record("concat", std::move(out), parts, [parts](Tape& tape, const Tensor& g) {
        std::size_t off = 0;
        for (const Var& p : parts) {
            const std::size_t pc = p.cols();
            if (tape.requires_grad(p)) {
                Tensor dp(g.rows(), pc);
                for (std::size_t r = 0; r < g.rows(); ++r) {
                    std::copy_n(g.data() + r * g.cols() + off, pc, dp.data() + r * pc);
                }
                tape.accumulate(p, dp);
            }
            off += pc;
        }
    });
}

Var slice_cols(Var x, std::size_t start, std::size_t count) {
    const Tensor& xv = x.value();
    if (start + count > xv.cols()) {
        shape_error("slice_cols", "columns [" + std::to_string(start) + ", " +
                                      std::to_string(start + count) + ") out of " + xv.shape_string());
    }
    Tensor out(xv.rows(), count);
    for (std::size_t r = 0; r < xv.rows(); ++r) {
        std::copy_n(xv.data() + r * xv.cols() + start, count, out.data() + r * count);
    }
    return x.tape().record("slice_cols", std::move(out), {x}, [x, start, count](Tape& tape, const Tensor& g) {
        Tensor dx(x.rows(), x.cols());
        for (std::size_t r = 0; r < g.rows(); ++r) {
            std::copy_n(g.data() + r * count, count, dx.data() + r * dx.cols() + start);
        }
        tape.accumulate(x, dx);
    });
}

Var gather_rows(Var table, const std::vector<std::size_t>& index) {
    const Tensor& tv = table.value();
    Tensor out(index.size(), tv.cols());
    for (std::size_t r = 0; r < index.size(); ++r) {
        if (index[r] >= tv.rows()) {
            shape_error("gather_rows", "row " + std::to_string(index[r]) + " out of " + tv.shape_string());
        }
        std::copy_n(tv.data() + index[r] * tv.cols(), tv.cols(), out.data() + r * tv.cols());
    }
    return table.tape().record("gather_rows", std::move(out), {table}, [table, index](Tape& tape, const Tensor& g) {
        Tensor dt(table.rows(), table.cols());
        for (std::size_t r = 0; r < index.size(); ++r) {
            for (std::size_t c = 0; c < g.cols(); ++c) dt(index[r], c) += g(r, c);
        }
        tape.accumulate(table, dt);
    });
}

Var add(Var a, Var b) {
    require_same_shape("add", a.value(), b.value());
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.value()[i];
    return a.tape().record("add", std::move(out), {a, b}, [a, b](Tape& tape, const Tensor& g) {
        tape.accumulate(a, g);
        tape.accumulate(b, g);
    });
}

Var sub(Var a, Var b) {
    require_same_shape("sub", a.value(), b.value());
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.value()[i];
    return a.tape().record("sub", std::move(out), {a, b}, [a, b](Tape& tape, const Tensor& g) {
        tape.accumulate(a, g);
        if (tape.requires_grad(b)) {
            Tensor db = g;
            for (std::size_t i = 0; i < db.size(); ++i) db[i] = -db[i];
            tape.accumulate(b, db);
        }
    });
}

Var mul(Var a, Var b) {
    require_same_shape("mul", a.value(), b.value());
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b.value()[i];
    return a.tape().record("mul", std::move(out), {a, b}, [a, b](Tape& tape, const Tensor& g) {
        if (tape.requires_grad(a)) {
            Tensor da = g;
            for (std::size_t i = 0; i < da.size(); ++i) da[i] *= b.value()[i];
            tape.accumulate(a, da);
        }
        if (tape.requires_grad(b)) {
            Tensor db = g;
            for (std::size_t i = 0; i < db.size(); ++i) db[i] *= a.value()[i];
            tape.accumulate(b, db);
        }
    });
}

Var scale(Var a, double s) {
    Tensor out = a.value();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= s;
    return a.tape().record("scale", std::move(out), {a}, [a, s](Tape& tape, const Tensor& g) {
        Tensor da = g;
        for (std::size_t i = 0; i < da.size(); ++i) da[i] *= s;
        tape.accumulate(a, da);
    });
}

Var mul_col(Var a, Var c) {
    const Tensor& av = a.value();
    const Tensor& cv = c.value();
    if (cv.cols() != 1 || cv.rows() != av.rows()) {
        shape_error("mul_col", "a is " + av.shape_string() + " but c is " + cv.shape_string());
    }
    Tensor out = av;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t k = 0; k < out.cols(); ++k) out(r, k) *= cv[r];
    }
    return a.tape().record("mul_col", std::move(out), {a, c}, [a, c](Tape& tape, const Tensor& g) {
        const Tensor& av = a.value();
        const Tensor& cv = c.value();
        if (tape.requires_grad(a)) {
            Tensor da = g;
            for (std::size_t r = 0; r < da.rows(); ++r) {
                for (std::size_t k = 0; k < da.cols(); ++k) da(r, k) *= cv[r];
            }
            tape.accumulate(a, da);
        }
        if (tape.requires_grad(c)) {
            Tensor dc(cv.rows(), 1);
            for (std::size_t r = 0; r < g.rows(); ++r) {
                double s = 0.0;
                for (std::size_t k = 0; k < g.cols(); ++k) s += g(r, k) * av(r, k);
                dc[r] = s;
            }
            tape.accumulate(c, dc);
        }
    });
}

Var reshape(Var x, std::size_t rows, std::size_t cols) {
    const Tensor& xv = x.value();
    if (rows * cols != xv.size()) {
        shape_error("reshape", "cannot view " + xv.shape_string() + " as " + std::to_string(rows) + "x" +
                                   std::to_string(cols));
    }
    Tensor out(rows, cols, std::vector<double>(xv.values().begin(), xv.values().end()));
    return x.tape().record("reshape", std::move(out), {x}, [x](Tape& tape, const Tensor& g) {
        tape.accumulate(x, g);
    });
}

Var sum_row_groups(Var x, std::size_t group) {
    const Tensor& xv = x.value();
    if (group == 0 || xv.rows() % group != 0) {
        shape_error("sum_row_groups", xv.shape_string() + " rows not divisible by " + std::to_string(group));
    }
    const std::size_t n = xv.rows() / group;
    Tensor out(n, xv.cols());
    for (std::size_t r = 0; r < xv.rows(); ++r) {
        for (std::size_t c = 0; c < xv.cols(); ++c) out(r / group, c) += xv(r, c);
    }
    return x.tape().record("sum_row_groups", std::move(out), {x}, [x, group](Tape& tape, const Tensor& g) {
        Tensor dx(x.rows(), x.cols());
        for (std::size_t r = 0; r < dx.rows(); ++r) {
            for (std::size_t c = 0; c < dx.cols(); ++c) dx(r, c) = g(r / group, c);
        }
        tape.accumulate(x, dx);
    });
}

Var mean(Var x) {
    const Tensor& xv = x.value();
    if (xv.empty()) shape_error("mean", "empty input");
    double s = 0.0;
    for (double v : xv.values()) s += v;
    const double n = static_cast<double>(xv.size());
    return x.tape().record("mean", Tensor(1, 1, s / n), {x}, [x, n](Tape& tape, const Tensor& g) {
        tape.accumulate(x, Tensor(x.rows(), x.cols(), g[0] / n));
    });
}

Var mse(Var pred, Var target) {
    require_same_shape("mse", pred.value(), target.value());
    const Tensor& p = pred.value();
    const Tensor& t = target.value();
    if (p.empty()) shape_error("mse", "empty batch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double r = p[i] - t[i];
        s += r * r;
    }
    const double n = static_cast<double>(p.size());
    return pred.tape().record("mse", Tensor(1, 1, s / n), {pred, target}, [pred, target, n](Tape& tape, const Tensor& g) {
        const Tensor& p = pred.value();
        const Tensor& t = target.value();
        Tensor dp(p.rows(), p.cols());
        for (std::size_t i = 0; i < p.size(); ++i) dp[i] = g[0] * 2.0 * (p[i] - t[i]) / n;
        tape.accumulate(pred, dp);
        if (tape.requires_grad(target)) {
            for (std::size_t i = 0; i < dp.size(); ++i) dp[i] = -dp[i];
            tape.accumulate(target, dp);
        }
    });
}

}  // namespace alphafuse::nn::ops
