//! File formats: track CSVs, binary PGM images, landmark and descriptor
//! CSVs. Floats are written in shortest round-trip form so re-running a
//! command reproduces files byte for byte.

use std::io::{BufWriter, Read, Write};
use std::path::Path;

use ndarray::Array2;

use crate::data::types::{DescriptorSet, EmotionTrack, FeatureTrack, GrayImage, LandmarkFrame};
use crate::error::{Error, Result};

/// One frame's descriptor set together with its track timestamp.
#[derive(Debug, Clone, PartialEq)]
pub struct DescriptorFrame {
    pub timestamp: f64,
    pub set: DescriptorSet,
}

fn open_reader(path: &Path) -> Result<csv::Reader<std::fs::File>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(file))
}

fn parse_f64(path: &Path, line: usize, field: &str) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::parse(path, format!("row {line}: '{field}' is not a number")))
}

/// Read a feature track CSV: header row, column 1 `timestamp`, remaining
/// columns the feature vector.
pub fn read_feature_csv(path: &Path, modality_id: &str) -> Result<FeatureTrack> {
    let mut rdr = open_reader(path)?;
    let headers = rdr
        .headers()
        .map_err(|e| Error::parse(path, e.to_string()))?
        .clone();
    if headers.is_empty() || headers.get(0) != Some("timestamp") {
        return Err(Error::parse(path, "first column must be 'timestamp'"));
    }
    let dim = headers.len() - 1;
    if dim == 0 {
        return Err(Error::parse(path, "no feature columns"));
    }

    let mut timestamps = Vec::new();
    let mut flat = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::parse(path, e.to_string()))?;
        if record.len() != dim + 1 {
            return Err(Error::parse(
                path,
                format!("row {}: {} fields, expected {}", i + 2, record.len(), dim + 1),
            ));
        }
        timestamps.push(parse_f64(path, i + 2, &record[0])?);
        for j in 1..record.len() {
            flat.push(parse_f64(path, i + 2, &record[j])?);
        }
    }
    let vectors = Array2::from_shape_vec((timestamps.len(), dim), flat)
        .map_err(|e| Error::parse(path, e.to_string()))?;
    FeatureTrack::new(modality_id, timestamps, vectors)
}

pub fn write_feature_csv(path: &Path, track: &FeatureTrack) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let mut header = String::from("timestamp");
    for j in 0..track.dim() {
        header.push_str(&format!(",f{j}"));
    }
    writeln!(w, "{header}").map_err(|e| Error::io(path, e))?;
    for (i, &t) in track.timestamps().iter().enumerate() {
        let mut line = format!("{t}");
        for v in track.vectors().row(i) {
            line.push_str(&format!(",{v}"));
        }
        writeln!(w, "{line}").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read an annotation/prediction CSV with header
/// `timestamp,arousal,valence,liking`.
pub fn read_emotion_csv(path: &Path) -> Result<EmotionTrack> {
    let mut rdr = open_reader(path)?;
    let headers = rdr
        .headers()
        .map_err(|e| Error::parse(path, e.to_string()))?
        .clone();
    let expected = ["timestamp", "arousal", "valence", "liking"];
    if headers.len() != 4 || headers.iter().zip(expected).any(|(h, e)| h != e) {
        return Err(Error::parse(
            path,
            "header must be 'timestamp,arousal,valence,liking'",
        ));
    }

    let mut timestamps = Vec::new();
    let mut arousal = Vec::new();
    let mut valence = Vec::new();
    let mut liking = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::parse(path, e.to_string()))?;
        if record.len() != 4 {
            return Err(Error::parse(path, format!("row {}: expected 4 fields", i + 2)));
        }
        timestamps.push(parse_f64(path, i + 2, &record[0])?);
        arousal.push(parse_f64(path, i + 2, &record[1])?);
        valence.push(parse_f64(path, i + 2, &record[2])?);
        liking.push(parse_f64(path, i + 2, &record[3])?);
    }
    EmotionTrack::new(timestamps, arousal, valence, liking)
}

pub fn write_emotion_csv(path: &Path, track: &EmotionTrack) -> Result<()> {
    use crate::data::EmotionDim;
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "timestamp,arousal,valence,liking").map_err(|e| Error::io(path, e))?;
    let a = track.values(EmotionDim::Arousal);
    let v = track.values(EmotionDim::Valence);
    let l = track.values(EmotionDim::Liking);
    for (i, &t) in track.timestamps().iter().enumerate() {
        writeln!(w, "{t},{},{},{}", a[i], v[i], l[i]).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read a binary (P5) PGM image with 8-bit samples.
pub fn read_pgm(path: &Path) -> Result<GrayImage> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;

    let mut pos = 0usize;
    let mut next_token = |bytes: &[u8]| -> Result<String> {
        // skip whitespace and '#' comments
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            break;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(Error::parse(path, "truncated PGM header"));
        }
        Ok(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
    };

    let magic = next_token(&bytes)?;
    if magic != "P5" {
        return Err(Error::parse(path, format!("not a P5 PGM (magic '{magic}')")));
    }
    let width: usize = next_token(&bytes)?
        .parse()
        .map_err(|_| Error::parse(path, "bad width"))?;
    let height: usize = next_token(&bytes)?
        .parse()
        .map_err(|_| Error::parse(path, "bad height"))?;
    let maxval: usize = next_token(&bytes)?
        .parse()
        .map_err(|_| Error::parse(path, "bad maxval"))?;
    if maxval != 255 {
        return Err(Error::parse(path, format!("maxval {maxval}, expected 255")));
    }
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    let need = width * height;
    if bytes.len() < pos + need {
        return Err(Error::parse(
            path,
            format!("raster truncated: {} bytes, need {}", bytes.len() - pos, need),
        ));
    }
    GrayImage::new(width, height, bytes[pos..pos + need].to_vec())
}

pub fn write_pgm(path: &Path, img: &GrayImage) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write!(w, "P5\n{} {}\n255\n", img.width(), img.height()).map_err(|e| Error::io(path, e))?;
    w.write_all(img.pixels()).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read a landmarks CSV: header `frame_index,x1,y1,...,xk,yk`, one row per
/// frame, constant point count.
pub fn read_landmarks_csv(path: &Path) -> Result<Vec<LandmarkFrame>> {
    let mut rdr = open_reader(path)?;
    let headers = rdr
        .headers()
        .map_err(|e| Error::parse(path, e.to_string()))?
        .clone();
    if headers.is_empty() || headers.get(0) != Some("frame_index") {
        return Err(Error::parse(path, "first column must be 'frame_index'"));
    }
    if headers.len() < 3 || (headers.len() - 1) % 2 != 0 {
        return Err(Error::parse(path, "landmark columns must come in x,y pairs"));
    }

    let mut frames = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::parse(path, e.to_string()))?;
        if record.len() != headers.len() {
            return Err(Error::parse(path, format!("row {}: ragged row", i + 2)));
        }
        let frame_index: usize = record[0]
            .trim()
            .parse()
            .map_err(|_| Error::parse(path, format!("row {}: bad frame_index", i + 2)))?;
        let mut points = Vec::with_capacity((record.len() - 1) / 2);
        let mut j = 1;
        while j + 1 < record.len() + 1 && j + 1 <= record.len() {
            let x = parse_f64(path, i + 2, &record[j])?;
            let y = parse_f64(path, i + 2, &record[j + 1])?;
            points.push((x, y));
            j += 2;
        }
        frames.push(LandmarkFrame::new(frame_index, points)?);
    }
    Ok(frames)
}

pub fn write_landmarks_csv(path: &Path, frames: &[LandmarkFrame]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let k = frames.first().map(|f| f.points().len()).unwrap_or(0);
    let mut header = String::from("frame_index");
    for i in 1..=k {
        header.push_str(&format!(",x{i},y{i}"));
    }
    writeln!(w, "{header}").map_err(|e| Error::io(path, e))?;
    for f in frames {
        let mut line = format!("{}", f.frame_index);
        for (x, y) in f.points() {
            line.push_str(&format!(",{x},{y}"));
        }
        writeln!(w, "{line}").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Read a per-subject descriptor CSV: header
/// `timestamp,frame_index,response,d0,...,d{D-1}`, rows grouped by frame.
pub fn read_descriptors_csv(path: &Path) -> Result<Vec<DescriptorFrame>> {
    let mut rdr = open_reader(path)?;
    let headers = rdr
        .headers()
        .map_err(|e| Error::parse(path, e.to_string()))?
        .clone();
    if headers.len() < 4
        || headers.get(0) != Some("timestamp")
        || headers.get(1) != Some("frame_index")
        || headers.get(2) != Some("response")
    {
        return Err(Error::parse(
            path,
            "header must start with 'timestamp,frame_index,response'",
        ));
    }
    let dim = headers.len() - 3;

    struct Group {
        timestamp: f64,
        frame_index: usize,
        responses: Vec<f64>,
        flat: Vec<f64>,
    }
    let mut frames: Vec<DescriptorFrame> = Vec::new();
    let mut group: Option<Group> = None;

    let mut flush = |g: Group, frames: &mut Vec<DescriptorFrame>| -> Result<()> {
        let n = g.responses.len();
        let descriptors = Array2::from_shape_vec((n, dim), g.flat)
            .map_err(|e| Error::parse(path, e.to_string()))?;
        frames.push(DescriptorFrame {
            timestamp: g.timestamp,
            set: DescriptorSet::new(g.frame_index, descriptors, g.responses)?,
        });
        Ok(())
    };

    for (i, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::parse(path, e.to_string()))?;
        if record.len() != dim + 3 {
            return Err(Error::parse(path, format!("row {}: ragged row", i + 2)));
        }
        let timestamp = parse_f64(path, i + 2, &record[0])?;
        let frame_index: usize = record[1]
            .trim()
            .parse()
            .map_err(|_| Error::parse(path, format!("row {}: bad frame_index", i + 2)))?;
        let response = parse_f64(path, i + 2, &record[2])?;

        let start_new = match &group {
            Some(g) => g.frame_index != frame_index,
            None => true,
        };
        if start_new {
            if let Some(g) = group.take() {
                if frame_index <= g.frame_index {
                    return Err(Error::parse(
                        path,
                        format!("row {}: frame_index not increasing", i + 2),
                    ));
                }
                flush(g, &mut frames)?;
            }
            group = Some(Group {
                timestamp,
                frame_index,
                responses: Vec::new(),
                flat: Vec::new(),
            });
        } else if let Some(g) = &group {
            if g.timestamp != timestamp {
                return Err(Error::parse(
                    path,
                    format!("row {}: timestamp differs within frame {}", i + 2, frame_index),
                ));
            }
        }
        let g = group.as_mut().unwrap();
        g.responses.push(response);
        for j in 3..record.len() {
            g.flat.push(parse_f64(path, i + 2, &record[j])?);
        }
    }
    if let Some(g) = group.take() {
        flush(g, &mut frames)?;
    }
    if frames.is_empty() {
        return Err(Error::parse(path, "no descriptor rows"));
    }
    Ok(frames)
}

pub fn write_descriptors_csv(path: &Path, frames: &[DescriptorFrame]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let dim = frames.first().map(|f| f.set.dim()).unwrap_or(0);
    let mut header = String::from("timestamp,frame_index,response");
    for j in 0..dim {
        header.push_str(&format!(",d{j}"));
    }
    writeln!(w, "{header}").map_err(|e| Error::io(path, e))?;
    for f in frames {
        for (r, row) in f.set.responses().iter().zip(f.set.descriptors().rows()) {
            let mut line = format!("{},{},{}", f.timestamp, f.set.frame_index, r);
            for v in row {
                line.push_str(&format!(",{v}"));
            }
            writeln!(w, "{line}").map_err(|e| Error::io(path, e))?;
        }
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn feature_csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let track = FeatureTrack::new(
            "video",
            vec![0.0, 0.1, 0.25],
            array![[1.0, -2.5], [0.3333333333333333, 4.0], [5.0, 1e-7]],
        )
        .unwrap();
        write_feature_csv(&path, &track).unwrap();
        let back = read_feature_csv(&path, "video").unwrap();
        assert_eq!(back, track);
        // writing again produces identical bytes
        let first = std::fs::read(&path).unwrap();
        write_feature_csv(&path, &back).unwrap();
        assert_eq!(first, std::fs::read(&path).unwrap());
    }

    #[test]
    fn emotion_csv_round_trip_and_header_check() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("labels.csv");
        let track =
            EmotionTrack::new(vec![0.0, 0.5], vec![0.1, -0.9], vec![0.0, 1.0], vec![-1.0, 0.25])
                .unwrap();
        write_emotion_csv(&path, &track).unwrap();
        assert_eq!(read_emotion_csv(&path).unwrap(), track);

        std::fs::write(&path, "timestamp,a,v,l\n0.0,0,0,0\n").unwrap();
        assert!(read_emotion_csv(&path).is_err());
    }

    #[test]
    fn pgm_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.pgm");
        let img = GrayImage::new(3, 2, vec![0, 10, 255, 7, 128, 64]).unwrap();
        write_pgm(&path, &img).unwrap();
        assert_eq!(read_pgm(&path).unwrap(), img);
    }

    #[test]
    fn pgm_handles_comments() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("img.pgm");
        std::fs::write(&path, b"P5\n# a comment\n2 1\n255\n\x05\x09").unwrap();
        let img = read_pgm(&path).unwrap();
        assert_eq!(img.pixels(), &[5, 9]);
    }

    #[test]
    fn landmarks_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("lm.csv");
        let frames = vec![
            LandmarkFrame::new(0, vec![(1.0, 2.0), (3.0, 4.0), (5.0, 6.5)]).unwrap(),
            LandmarkFrame::new(1, vec![(1.5, 2.0), (3.5, 4.0), (5.5, 6.5)]).unwrap(),
        ];
        write_landmarks_csv(&path, &frames).unwrap();
        assert_eq!(read_landmarks_csv(&path).unwrap(), frames);
    }

    #[test]
    fn descriptors_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("desc.csv");
        let frames = vec![
            DescriptorFrame {
                timestamp: 0.0,
                set: DescriptorSet::new(0, array![[1.0, 2.0], [3.0, 4.0]], vec![0.9, 0.1])
                    .unwrap(),
            },
            DescriptorFrame {
                timestamp: 0.04,
                set: DescriptorSet::new(1, array![[5.0, 6.0]], vec![0.5]).unwrap(),
            },
        ];
        write_descriptors_csv(&path, &frames).unwrap();
        assert_eq!(read_descriptors_csv(&path).unwrap(), frames);
    }
}
