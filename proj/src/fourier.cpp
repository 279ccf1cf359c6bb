#include "triphoton/fourier.hpp"

#include <bit>
#include <mutex>

#include <fftw3.h>

#include "triphoton/errors.hpp"
#include "triphoton/parallel.hpp"

namespace triphoton::fourier {

namespace {

// The FFTW planner is not reentrant; execution on new arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

class FftPlan {
 public:
  FftPlan(std::size_t n, int sign) {
    std::vector<Complex> scratch(n);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), as_fftw(scratch.data()), as_fftw(scratch.data()), sign,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  ~FftPlan() {
    if (plan_ != nullptr) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void execute(std::vector<Complex>& data) const { fftw_execute_dft(plan_, as_fftw(data.data()), as_fftw(data.data())); }

 private:
  fftw_plan plan_ = nullptr;
};

}  // namespace

Quadrature trapezoid(double half_span, std::size_t n) {
  if (!(half_span > 0.0)) throw InvalidArgument("trapezoid: half span must be positive");
  if (n < 2) throw InvalidArgument("trapezoid: need at least two nodes");
  const double step = 2.0 * half_span / static_cast<double>(n - 1);
  Quadrature q{Grid1D(-half_span, step, n), std::vector<double>(n, step)};
  q.weights.front() = q.weights.back() = 0.5 * step;
  return q;
}

struct FourierSum::Impl {
  virtual ~Impl() = default;
  virtual void apply(std::span<const Complex> in, std::span<Complex> out) const = 0;
};

namespace {

// out[m] = sum_n in[n] e^{i s x_n y_m}. With theta = s dx dy and
// nm = (n^2 + m^2 - (m - n)^2) / 2 the sum becomes a linear convolution of
// chirp-modulated input with the chirp e^{-i theta k^2 / 2}.
class ChirpZ final : public FourierSum::Impl {
 public:
  ChirpZ(const Grid1D& x, const Grid1D& y, double scale)
      : n_(x.count()),
        m_(y.count()),
        length_(std::bit_ceil(n_ + m_ - 1)),
        forward_(length_, FFTW_FORWARD),
        backward_(length_, FFTW_BACKWARD) {
    const double theta = scale * x.step() * y.step();
    pre_.resize(n_);
    for (std::size_t n = 0; n < n_; ++n) {
      const double dn = static_cast<double>(n);
      pre_[n] = std::polar(1.0, scale * dn * x.step() * y.start() + 0.5 * theta * dn * dn);
    }
    post_.resize(m_);
    for (std::size_t m = 0; m < m_; ++m) {
      const double dm = static_cast<double>(m);
      post_[m] = std::polar(1.0 / static_cast<double>(length_), scale * x.start() * y.value(m) + 0.5 * theta * dm * dm);
    }
    kernel_.assign(length_, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < m_; ++k) {
      const double dk = static_cast<double>(k);
      kernel_[k] = std::polar(1.0, -0.5 * theta * dk * dk);
    }
    for (std::size_t k = 1; k < n_; ++k) {
      const double dk = static_cast<double>(k);
      kernel_[length_ - k] = std::polar(1.0, -0.5 * theta * dk * dk);
    }
    forward_.execute(kernel_);
  }

  void apply(std::span<const Complex> in, std::span<Complex> out) const override {
    std::vector<Complex> buf(length_, Complex(0.0, 0.0));
    for (std::size_t n = 0; n < n_; ++n) buf[n] = in[n] * pre_[n];
    forward_.execute(buf);
    for (std::size_t i = 0; i < length_; ++i) buf[i] *= kernel_[i];
    backward_.execute(buf);
    for (std::size_t m = 0; m < m_; ++m) out[m] = buf[m] * post_[m];
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t length_;
  FftPlan forward_;
  FftPlan backward_;
  std::vector<Complex> pre_;
  std::vector<Complex> post_;
  std::vector<Complex> kernel_;
};

// Per-term exponentials, tabulated once per (node, output) pair.
class DirectSum final : public FourierSum::Impl {
 public:
  DirectSum(const Grid1D& x, const Grid1D& y, double scale) : n_(x.count()), m_(y.count()), table_(n_ * m_) {
    for (std::size_t m = 0; m < m_; ++m)
      for (std::size_t n = 0; n < n_; ++n) table_[m * n_ + n] = std::polar(1.0, scale * x.value(n) * y.value(m));
  }

  void apply(std::span<const Complex> in, std::span<Complex> out) const override {
    for (std::size_t m = 0; m < m_; ++m) {
      const Complex* row = &table_[m * n_];
      Complex sum = 0.0;
      for (std::size_t n = 0; n < n_; ++n) sum += in[n] * row[n];
      out[m] = sum;
    }
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<Complex> table_;
};

}  // namespace

FourierSum::FourierSum(const Grid1D& nodes, const Grid1D& outputs, double scale, Method method)
    : n_in_(nodes.count()), n_out_(outputs.count()) {
  if (method == Method::fft)
    impl_ = std::make_unique<ChirpZ>(nodes, outputs, scale);
  else
    impl_ = std::make_unique<DirectSum>(nodes, outputs, scale);
}

FourierSum::~FourierSum() = default;
FourierSum::FourierSum(FourierSum&&) noexcept = default;
FourierSum& FourierSum::operator=(FourierSum&&) noexcept = default;

void FourierSum::apply(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != n_in_ || out.size() != n_out_) throw InvalidArgument("FourierSum::apply: size mismatch");
  impl_->apply(in, out);
}

std::vector<Complex> transform(std::span<const Complex> samples, const Grid1D& nodes, const Grid1D& outputs,
                               double scale, Method method) {
  FourierSum sum(nodes, outputs, scale, method);
  std::vector<Complex> out(outputs.count());
  sum.apply(samples, out);
  return out;
}

std::vector<Complex> transform_2d(std::span<const Complex> samples, const Grid1D& x_nodes, const Grid1D& z_nodes,
                                  const Grid1D& y_outputs, const Grid1D& w_outputs, double scale, Method method) {
  const std::size_t nx = x_nodes.count();
  const std::size_t nz = z_nodes.count();
  const std::size_t my = y_outputs.count();
  const std::size_t mw = w_outputs.count();
  if (samples.size() != nx * nz) throw InvalidArgument("transform_2d: sample count does not match node axes");

  // Stage 1: along x for each z column -> partial[k][a].
  const FourierSum along_x(x_nodes, y_outputs, scale, method);
  std::vector<Complex> partial(nz * my);
  parallel_for(nz, [&](std::size_t k) {
    std::vector<Complex> column(nx);
    for (std::size_t i = 0; i < nx; ++i) column[i] = samples[i * nz + k];
    along_x.apply(column, std::span<Complex>(partial).subspan(k * my, my));
  });

  // Stage 2: along z for each output row a -> out[a][b].
  const FourierSum along_z(z_nodes, w_outputs, scale, method);
  std::vector<Complex> out(my * mw);
  parallel_for(my, [&](std::size_t a) {
    std::vector<Complex> row(nz);
    for (std::size_t k = 0; k < nz; ++k) row[k] = partial[k * my + a];
    along_z.apply(row, std::span<Complex>(out).subspan(a * mw, mw));
  });
  return out;
}

}  // namespace triphoton::fourier
