// SPDX-License-Identifier: MIT OR Apache-2.0

//! Lagged regression design shared by all three stages.
//!
//! For a series `y_1..y_T` with lag order `q`, the design has one row per
//! response time `t = q+1..=T`. Row `r` (0-based) carries the response
//! `y_{q+1+r}` and the stacked regressor
//! `x_r = (y_{t-1}', ..., y_{t-q}')'` of dimension `p*q`.

use nalgebra::{DMatrix, DVector};

use crate::model::TimeSeries;

#[derive(Debug, Clone)]
pub struct LaggedDesign {
    /// Regressors, one row per response time; `rows x (p*q)`.
    pub x: DMatrix<f64>,
    /// Responses; `rows x p`.
    pub y: DMatrix<f64>,
    pub p: usize,
    pub q: usize,
    /// Total series length `T`.
    pub t_len: usize,
}

impl LaggedDesign {
    pub fn build(series: &TimeSeries) -> Self {
        let (t_len, p, q) = (series.t_len(), series.p(), series.q);
        let rows = t_len - q;
        let mut x = DMatrix::zeros(rows, p * q);
        let mut y = DMatrix::zeros(rows, p);
        for r in 0..rows {
            let t = q + 1 + r; // 1-based response time
            y.row_mut(r).copy_from(&series.values.row(t - 1));
            for l in 0..q {
                x.view_mut((r, l * p), (1, p))
                    .copy_from(&series.values.row(t - 1 - l - 1));
            }
        }
        LaggedDesign { x, y, p, q, t_len }
    }

    pub fn rows(&self) -> usize {
        self.x.nrows()
    }

    /// 1-based response time of row `r`.
    pub fn time_of_row(&self, r: usize) -> usize {
        self.q + 1 + r
    }

    /// Row index of the response at 1-based time `t` (`t` in `q+1..=T`).
    pub fn row_of_time(&self, t: usize) -> usize {
        t - self.q - 1
    }

    pub fn regressor(&self, r: usize) -> DVector<f64> {
        self.x.row(r).transpose()
    }

    pub fn response(&self, r: usize) -> DVector<f64> {
        self.y.row(r).transpose()
    }

    /// Contiguous sub-design for response times `t` in `[t_lo, t_hi)`.
    pub fn slice_times(&self, t_lo: usize, t_hi: usize) -> (DMatrix<f64>, DMatrix<f64>) {
        let r_lo = self.row_of_time(t_lo);
        let r_hi = self.row_of_time(t_hi);
        (
            self.x.rows(r_lo, r_hi - r_lo).into_owned(),
            self.y.rows(r_lo, r_hi - r_lo).into_owned(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    #[test]
    fn rows_align_with_lags() {
        // T = 5, p = 2, q = 2: rows for t = 3, 4, 5.
        let values = dmatrix![
            1.0, 10.0;
            2.0, 20.0;
            3.0, 30.0;
            4.0, 40.0;
            5.0, 50.0
        ];
        let series = TimeSeries::new(values, 2).unwrap();
        let design = LaggedDesign::build(&series);
        assert_eq!(design.rows(), 3);
        assert_eq!(design.time_of_row(0), 3);
        // x_0 = (y_2', y_1')
        assert_eq!(design.x.row(0).iter().copied().collect::<Vec<_>>(), vec![2.0, 20.0, 1.0, 10.0]);
        assert_eq!(design.y.row(0).iter().copied().collect::<Vec<_>>(), vec![3.0, 30.0]);
        assert_eq!(design.x.row(2).iter().copied().collect::<Vec<_>>(), vec![4.0, 40.0, 3.0, 30.0]);

        let (xs, ys) = design.slice_times(4, 6);
        assert_eq!(xs.nrows(), 2);
        assert_eq!(ys.row(0)[0], 4.0);
        assert_eq!(ys.row(1)[0], 5.0);
    }
}
