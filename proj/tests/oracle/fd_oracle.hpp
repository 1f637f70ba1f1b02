#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gk/model.hpp"

// Central finite differences straight from the metric component values.
// Nothing here touches the jet machinery, so agreement with it is evidence.
namespace gk::oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

Mat metric_at(const ChartModel& model, std::span<const double> point);

// dg[e](a, b) = d_e g_ab.
std::vector<Mat> metric_grad(const ChartModel& model, std::span<const double> point, double h = 1e-5);

// gamma[a](b, c) = Gamma^a_bc from the Koszul formula with differenced metric.
std::vector<Mat> christoffel(const ChartModel& model, std::span<const double> point, double h = 1e-5);

// R(x, y)z from second differences: Christoffels are differenced once more
// with step `outer`.
Vec curvature(const ChartModel& model, std::span<const double> point, const Vec& x, const Vec& y, const Vec& z,
              double outer = 1e-3);

double sectional(const ChartModel& model, std::span<const double> point, const Vec& x, const Vec& y,
                 double outer = 1e-3);

// d_e of a scalar field, differenced.
double partial(const Field& f, std::span<const double> point, int e, double h = 1e-5);

}  // namespace gk::oracle
