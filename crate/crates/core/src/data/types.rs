//! Core domain types. Constructors validate every invariant eagerly so the
//! rest of the pipeline can assume well-formed values.

use ndarray::Array2;

use crate::error::{Error, Result};

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    intensities: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, intensities: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::validation("image dimensions must be >= 1"));
        }
        if intensities.len() != width * height {
            return Err(Error::validation(format!(
                "image has {} intensities, expected {}x{} = {}",
                intensities.len(),
                width,
                height,
                width * height
            )));
        }
        Ok(GrayImage {
            width,
            height,
            intensities,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.intensities
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.intensities[y * self.width + x]
    }
}

/// Facial landmark coordinates for one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkFrame {
    pub frame_index: usize,
    points: Vec<(f64, f64)>,
}

impl LandmarkFrame {
    pub fn new(frame_index: usize, points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::validation(format!(
                "landmark frame {} has {} points, need >= 3",
                frame_index,
                points.len()
            )));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::validation(format!(
                "landmark frame {frame_index} has non-finite coordinates"
            )));
        }
        Ok(LandmarkFrame {
            frame_index,
            points,
        })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }
}

/// Local descriptors for one frame, each with a saliency response.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorSet {
    pub frame_index: usize,
    descriptors: Array2<f64>,
    responses: Vec<f64>,
}

impl DescriptorSet {
    pub fn new(frame_index: usize, descriptors: Array2<f64>, responses: Vec<f64>) -> Result<Self> {
        if responses.len() != descriptors.nrows() {
            return Err(Error::validation(format!(
                "descriptor set frame {}: {} responses for {} descriptors",
                frame_index,
                responses.len(),
                descriptors.nrows()
            )));
        }
        if descriptors.iter().any(|v| !v.is_finite()) || responses.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation(format!(
                "descriptor set frame {frame_index} has non-finite entries"
            )));
        }
        Ok(DescriptorSet {
            frame_index,
            descriptors,
            responses,
        })
    }

    pub fn descriptors(&self) -> &Array2<f64> {
        &self.descriptors
    }

    pub fn responses(&self) -> &[f64] {
        &self.responses
    }

    pub fn len(&self) -> usize {
        self.responses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.responses.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.descriptors.ncols()
    }
}

/// Time-stamped sequence of fixed-width feature vectors for one
/// subject x one modality.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTrack {
    pub modality_id: String,
    timestamps: Vec<f64>,
    vectors: Array2<f64>,
}

impl FeatureTrack {
    pub fn new(modality_id: impl Into<String>, timestamps: Vec<f64>, vectors: Array2<f64>) -> Result<Self> {
        let modality_id = modality_id.into();
        if timestamps.is_empty() {
            return Err(Error::validation(format!(
                "feature track '{modality_id}' is empty"
            )));
        }
        if timestamps.len() != vectors.nrows() {
            return Err(Error::validation(format!(
                "feature track '{}': {} timestamps for {} vectors",
                modality_id,
                timestamps.len(),
                vectors.nrows()
            )));
        }
        check_timestamps(&timestamps, &modality_id)?;
        if vectors.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation(format!(
                "feature track '{modality_id}' has non-finite entries"
            )));
        }
        Ok(FeatureTrack {
            modality_id,
            timestamps,
            vectors,
        })
    }

    pub fn timestamps(&self) -> &[f64] {
        &self.timestamps
    }

    pub fn vectors(&self) -> &Array2<f64> {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }
}

/// Continuous emotion dimensions annotated in the corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EmotionDim {
    Arousal,
    Valence,
    Liking,
}

impl EmotionDim {
    pub const ALL: [EmotionDim; 3] = [EmotionDim::Arousal, EmotionDim::Valence, EmotionDim::Liking];

    pub fn name(self) -> &'static str {
        match self {
            EmotionDim::Arousal => "arousal",
            EmotionDim::Valence => "valence",
            EmotionDim::Liking => "liking",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "arousal" => Ok(EmotionDim::Arousal),
            "valence" => Ok(EmotionDim::Valence),
            "liking" => Ok(EmotionDim::Liking),
            other => Err(Error::validation(format!(
                "unknown emotion dimension '{other}'"
            ))),
        }
    }
}

/// Time-stamped (arousal, valence, liking) triples. Used both for gold
/// annotations and model predictions.
#[derive(Debug, Clone, PartialEq)]
pub struct EmotionTrack {
    timestamps: Vec<f64>,
    arousal: Vec<f64>,
    valence: Vec<f64>,
    liking: Vec<f64>,
}

pub type AnnotationTrack = EmotionTrack;
pub type PredictionTrack = EmotionTrack;

impl EmotionTrack {
    pub fn new(
        timestamps: Vec<f64>,
        arousal: Vec<f64>,
        valence: Vec<f64>,
        liking: Vec<f64>,
    ) -> Result<Self> {
        if timestamps.is_empty() {
            return Err(Error::validation("emotion track is empty"));
        }
        let t = timestamps.len();
        if arousal.len() != t || valence.len() != t || liking.len() != t {
            return Err(Error::validation(format!(
                "emotion track length mismatch: {} timestamps, {}/{}/{} values",
                t,
                arousal.len(),
                valence.len(),
                liking.len()
            )));
        }
        check_timestamps(&timestamps, "emotion track")?;
        for seq in [&arousal, &valence, &liking] {
            if seq.iter().any(|v| !v.is_finite()) {
                return Err(Error::validation("emotion track has non-finite values"));
            }
        }
        Ok(EmotionTrack {
            timestamps,
            arousal,
            valence,
            liking,
        })
    }

    pub fn timestamps(&self) -> &[f64] {
        &self.timestamps
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    pub fn values(&self, dim: EmotionDim) -> &[f64] {
        match dim {
            EmotionDim::Arousal => &self.arousal,
            EmotionDim::Valence => &self.valence,
            EmotionDim::Liking => &self.liking,
        }
    }
}

fn check_timestamps(timestamps: &[f64], what: &str) -> Result<()> {
    if timestamps.iter().any(|t| !t.is_finite()) {
        return Err(Error::validation(format!(
            "{what}: non-finite timestamp"
        )));
    }
    for w in timestamps.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::validation(format!(
                "{what}: timestamps not strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}
