//! Temporal alignment of per-frame features to label timestamps, and label
//! range clamping.

use ndarray::Array2;

use crate::data::types::{EmotionTrack, FeatureTrack};
use crate::error::{Error, Result};

/// Index of the timestamp in `timestamps` nearest to `t`.
///
/// Ties (equal |delta|) resolve to the earlier timestamp. `timestamps` must
/// be non-empty and strictly increasing.
pub fn nearest_index(timestamps: &[f64], t: f64) -> usize {
    let n = timestamps.len();
    let right = timestamps.partition_point(|&ts| ts < t);
    if right == 0 {
        return 0;
    }
    if right == n {
        return n - 1;
    }
    let left = right - 1;
    let d_left = t - timestamps[left];
    let d_right = timestamps[right] - t;
    if d_left <= d_right {
        left
    } else {
        right
    }
}

/// Re-sample a feature track onto the label timestamp grid.
///
/// Each output row is the feature vector whose timestamp is nearest to the
/// label timestamp; the output carries the label timestamps.
pub fn align_track(features: &FeatureTrack, label_timestamps: &[f64]) -> Result<FeatureTrack> {
    if features.is_empty() {
        return Err(Error::validation("align_track: empty feature track"));
    }
    if label_timestamps.is_empty() {
        return Err(Error::validation("align_track: empty label timestamps"));
    }
    for w in label_timestamps.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::validation(
                "align_track: label timestamps not strictly increasing",
            ));
        }
    }

    let dim = features.dim();
    let mut vectors = Array2::zeros((label_timestamps.len(), dim));
    for (out_row, &t) in label_timestamps.iter().enumerate() {
        let src = nearest_index(features.timestamps(), t);
        vectors
            .row_mut(out_row)
            .assign(&features.vectors().row(src));
    }
    FeatureTrack::new(
        features.modality_id.clone(),
        label_timestamps.to_vec(),
        vectors,
    )
}

/// Re-sample an emotion track (predictions) onto a reference timestamp grid
/// using the same nearest-timestamp rule as `align_track`.
pub fn align_emotion_track(track: &EmotionTrack, timestamps: &[f64]) -> Result<EmotionTrack> {
    if timestamps.is_empty() {
        return Err(Error::validation("align_emotion_track: empty timestamps"));
    }
    let pick = |values: &[f64]| -> Vec<f64> {
        timestamps
            .iter()
            .map(|&t| values[nearest_index(track.timestamps(), t)])
            .collect()
    };
    EmotionTrack::new(
        timestamps.to_vec(),
        pick(track.values(crate::data::EmotionDim::Arousal)),
        pick(track.values(crate::data::EmotionDim::Valence)),
        pick(track.values(crate::data::EmotionDim::Liking)),
    )
}

/// Clamp every label into [-1, 1]. Returns the clamped track and how many
/// entries were out of range.
pub fn clamp_labels(track: &EmotionTrack) -> (EmotionTrack, usize) {
    let mut clamped = 0usize;
    let clamp_seq = |values: &[f64], clamped: &mut usize| -> Vec<f64> {
        values
            .iter()
            .map(|&v| {
                let c = v.clamp(-1.0, 1.0);
                if c != v {
                    *clamped += 1;
                }
                c
            })
            .collect()
    };
    let arousal = clamp_seq(track.values(crate::data::EmotionDim::Arousal), &mut clamped);
    let valence = clamp_seq(track.values(crate::data::EmotionDim::Valence), &mut clamped);
    let liking = clamp_seq(track.values(crate::data::EmotionDim::Liking), &mut clamped);
    let out = EmotionTrack::new(track.timestamps().to_vec(), arousal, valence, liking)
        .expect("clamping preserves track invariants");
    (out, clamped)
}
