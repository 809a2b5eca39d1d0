//! Domain types, corpus manifest, and temporal alignment of features to
//! labels. Everything here is immutable after construction and safe to
//! share across parallel workers.

mod align;
mod io;
mod manifest;
mod types;

pub use align::{align_emotion_track, align_track, clamp_labels, nearest_index};
pub use io::{
    read_descriptors_csv, read_emotion_csv, read_feature_csv, read_landmarks_csv, read_pgm,
    write_descriptors_csv, write_emotion_csv, write_feature_csv, write_landmarks_csv, write_pgm,
    DescriptorFrame,
};
pub use manifest::{load_manifest, CorpusManifest, Partition, SubjectEntry};
pub use types::{
    AnnotationTrack, DescriptorSet, EmotionDim, EmotionTrack, FeatureTrack, GrayImage,
    LandmarkFrame, PredictionTrack,
};
