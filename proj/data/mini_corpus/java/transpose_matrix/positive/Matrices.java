package corpus.matrix;

import java.util.ArrayList;
import java.util.List;

public class Matrices {

    public static int[][] transpose(int[][] matrix) {
        int rows = matrix.length;
        int cols = matrix[0].length;
        int[][] result = new int[cols][rows];
        for (int i = 0; i < rows; i++) {
            for (int j = 0; j < cols; j++) {
                result[j][i] = matrix[i][j];
            }
        }
        return result;
    }

    public static void transposeInPlace(double[][] m) {
        for (int i = 0; i < m.length; i++) {
            for (int j = i + 1; j < m.length; j++) {
                double t = m[i][j];
                m[i][j] = m[j][i];
                m[j][i] = t;
            }
        }
    }

    public double[][] flip(double[][] a) {
        double[][] b = new double[a[0].length][a.length];
        for (int r = 0; r < a.length; r++) {
            for (int c = 0; c < a[0].length; c++) {
                b[c][r] = a[r][c];
            }
        }
        return b;
    }

    static List<List<Integer>> transposeLists(List<List<Integer>> rows) {
        List<List<Integer>> out = new ArrayList<>();
        for (int c = 0; c < rows.get(0).size(); c++) {
            List<Integer> column = new ArrayList<>();
            for (List<Integer> row : rows) {
                column.add(row.get(c));
            }
            out.add(column);
        }
        return out;
    }

    public static char[][] swapAxes(char[][] grid) {
        int h = grid.length;
        int w = grid[0].length;
        char[][] res = new char[w][h];
        for (int y = 0; y < h; y++) {
            for (int x = 0; x < w; x++) {
                res[x][y] = grid[y][x];
            }
        }
        return res;
    }

    public static int[][] transposed(int[][] src) {
        int[][] dst = new int[src[0].length][src.length];
        int i = 0;
        while (i < src.length) {
            int j = 0;
            while (j < src[i].length) {
                dst[j][i] = src[i][j];
                j++;
            }
            i++;
        }
        return dst;
    }

    public static long[][] transpose(long[][] in) {
        long[][] out = new long[in[0].length][in.length];
        for (int row = 0; row < in.length; row++) {
            for (int col = 0; col < in[row].length; col++) {
                out[col][row] = in[row][col];
            }
        }
        return out;
    }

    public static void transposeSquare(int[][] m, int n) {
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < i; j++) {
                int temp = m[i][j];
                m[i][j] = m[j][i];
                m[j][i] = temp;
            }
        }
    }

    public static int[] transposeFlat(int[] data, int rows, int cols) {
        int[] out = new int[data.length];
        for (int r = 0; r < rows; r++) {
            for (int c = 0; c < cols; c++) {
                out[c * rows + r] = data[r * cols + c];
            }
        }
        return out;
    }

    public static String[][] pivot(String[][] table) {
        String[][] pivoted = new String[table[0].length][table.length];
        for (int i = 0; i < table.length; i++) {
            for (int j = 0; j < table[i].length; j++) {
                pivoted[j][i] = table[i][j];
            }
        }
        return pivoted;
    }
}
